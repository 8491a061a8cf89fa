//! Rational expressions in the grid index `j`, evaluated exactly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::expoly::{ExpPoly, TermKey};
use crate::error::{GermError, Result};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Exponent {
    Int(u32),
    Index,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RatExpr {
    /// Non-negative integer literal; negation is explicit.
    Int(BigInt),
    Index,
    Neg(Box<RatExpr>),
    Add(Box<RatExpr>, Box<RatExpr>),
    Sub(Box<RatExpr>, Box<RatExpr>),
    Mul(Box<RatExpr>, Box<RatExpr>),
    Div(Box<RatExpr>, Box<RatExpr>),
    Pow(Box<RatExpr>, Exponent),
}

impl RatExpr {
    pub fn int(n: i64) -> RatExpr {
        if n < 0 {
            RatExpr::Neg(Box::new(RatExpr::Int(BigInt::from(-n))))
        } else {
            RatExpr::Int(BigInt::from(n))
        }
    }

    pub fn eval(&self, j: u64) -> Result<Rat> {
        Ok(match self {
            RatExpr::Int(n) => Rat::from_int(n.clone()),
            RatExpr::Index => Rat::from_int(j),
            RatExpr::Neg(e) => -e.eval(j)?,
            RatExpr::Add(a, b) => a.eval(j)? + b.eval(j)?,
            RatExpr::Sub(a, b) => a.eval(j)? - b.eval(j)?,
            RatExpr::Mul(a, b) => a.eval(j)? * b.eval(j)?,
            RatExpr::Div(a, b) => {
                let d = b.eval(j)?;
                if d.is_zero() {
                    return Err(GermError::DivisionByZero(j));
                }
                a.eval(j)? / d
            }
            RatExpr::Pow(b, e) => {
                let base = b.eval(j)?;
                let exp = match e {
                    Exponent::Int(n) => *n as i64,
                    Exponent::Index => j.to_i64().ok_or(GermError::IndexOverflow)?,
                };
                base.pow(exp).ok_or(GermError::DivisionByZero(j))?
            }
        })
    }

    /// Converts to an integer exponential polynomial when the expression is
    /// built from integers, `j`, `+`, `-`, `*`, integer powers and `b^j`
    /// with a literal base `b >= 1`.
    pub fn to_expoly(&self) -> std::result::Result<ExpPoly, String> {
        Ok(match self {
            RatExpr::Int(n) => ExpPoly::constant(n.clone()),
            RatExpr::Index => ExpPoly::var(),
            RatExpr::Neg(e) => e.to_expoly()?.neg(),
            RatExpr::Add(a, b) => a.to_expoly()?.add(&b.to_expoly()?),
            RatExpr::Sub(a, b) => a.to_expoly()?.sub(&b.to_expoly()?),
            RatExpr::Mul(a, b) => a
                .to_expoly()?
                .mul(&b.to_expoly()?)
                .ok_or("generator term overflows")?,
            RatExpr::Div(..) => return Err("division is not allowed in an integer generator".into()),
            RatExpr::Pow(b, Exponent::Int(n)) => {
                b.to_expoly()?.pow(*n).ok_or("generator term overflows")?
            }
            RatExpr::Pow(b, Exponent::Index) => match b.as_ref() {
                RatExpr::Int(n) if n.is_positive() => {
                    let base = n.to_u64().ok_or("exponential base too large")?;
                    ExpPoly::monomial(1, TermKey { base, degree: 0 })
                }
                _ => return Err("exponential base must be a positive integer literal".into()),
            },
        })
    }
}

impl RatExpr {
    fn prec(&self) -> u8 {
        match self {
            RatExpr::Add(..) | RatExpr::Sub(..) => 1,
            RatExpr::Mul(..) | RatExpr::Div(..) => 2,
            RatExpr::Neg(_) => 3,
            RatExpr::Pow(..) => 4,
            RatExpr::Int(_) | RatExpr::Index => 5,
        }
    }

    /// Prints with the fewest parentheses that re-parse to the same tree
    /// (binary operators associate to the left), naming the index `var`.
    pub fn display_in(&self, var: char) -> impl fmt::Display + '_ {
        struct D<'a>(&'a RatExpr, char);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.write(f, self.1)
            }
        }
        D(self, var)
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, var: char, min: u8) -> fmt::Result {
        if self.prec() < min {
            f.write_str("(")?;
            self.write(f, var)?;
            f.write_str(")")
        } else {
            self.write(f, var)
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, var: char) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &RatExpr, op: &str, b: &RatExpr, p: u8| {
            a.write_at(f, var, p)?;
            f.write_str(op)?;
            b.write_at(f, var, p + 1)
        };
        match self {
            RatExpr::Int(n) => write!(f, "{n}"),
            RatExpr::Index => write!(f, "{var}"),
            RatExpr::Neg(e) => {
                f.write_str("-")?;
                e.write_at(f, var, 3)
            }
            RatExpr::Add(a, b) => bin(f, a, " + ", b, 1),
            RatExpr::Sub(a, b) => bin(f, a, " - ", b, 1),
            RatExpr::Mul(a, b) => bin(f, a, "*", b, 2),
            RatExpr::Div(a, b) => bin(f, a, "/", b, 2),
            RatExpr::Pow(b, e) => {
                b.write_at(f, var, 5)?;
                match e {
                    Exponent::Int(n) => write!(f, "^{n}"),
                    Exponent::Index => write!(f, "^{var}"),
                }
            }
        }
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 'j')
    }
}
