//! Exact rationals over arbitrary-precision integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Rat(BigRational);

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        if self.denom() == other.denom() {
            return self.numer().cmp(other.numer());
        }
        let (s, o) = (self.numer().sign(), other.numer().sign());
        if s != o {
            return s.cmp(&o);
        }
        (self.numer() * other.denom()).cmp(&(other.numer() * self.denom()))
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Rat {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Rat {
        let d: BigInt = denom.into();
        assert!(!d.is_zero(), "zero denominator");
        Rat(BigRational::new(numer.into(), d))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Rat {
        Rat(BigRational::from_integer(n.into()))
    }

    /// `1/k`.
    pub fn recip_int(k: impl Into<BigInt>) -> Rat {
        let k: BigInt = k.into();
        assert!(!k.is_zero(), "zero denominator");
        if k.is_negative() {
            Rat(BigRational::new_raw(-BigInt::one(), -k))
        } else {
            Rat(BigRational::new_raw(BigInt::one(), k))
        }
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Rat> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    /// Least integer `k` with `k >= self`.
    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// `self^exp` for a (possibly negative) integer exponent.
    pub fn pow(&self, exp: i64) -> Option<Rat> {
        if exp < 0 {
            return self.recip()?.pow(-exp);
        }
        let e = exp as u64;
        let n = num_traits::pow::Pow::pow(self.numer(), e);
        let d = num_traits::pow::Pow::pow(self.denom(), e);
        Some(Rat(BigRational::new_raw(n, d)))
    }

    pub fn max(self, other: Rat) -> Rat {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Rat) -> Rat {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Least common multiple of two denominators, used to clear fractions.
    pub fn denom_lcm(&self, other: &Rat) -> BigInt {
        self.denom().lcm(other.denom())
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Rat {
        Rat::from_int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRatError(pub String);

impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Rat, ParseRatError> {
        let err = || ParseRatError(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(Rat::new(n, d))
            }
            None => Ok(Rat::from_int(s.parse::<BigInt>().map_err(|_| err())?)),
        }
    }
}

/// `gcd` with a Euclid step first: the binary algorithm is slow when one
/// operand is much shorter than the other.
fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (small, big) = if a.bits() <= b.bits() { (a, b) } else { (b, a) };
    if small.is_zero() {
        return big.abs();
    }
    let r = big % small;
    if r.is_zero() {
        small.abs()
    } else {
        small.gcd(&r)
    }
}

/// `a/b * c/d` for lowest-terms inputs, cancelling crosswise.
fn mul_reduced(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Rat {
    if a.is_zero() || c.is_zero() {
        return Rat::zero();
    }
    let g1 = gcd(a, d);
    let g2 = gcd(c, b);
    let n = (a / &g1) * (c / &g2);
    let m = (b / &g2) * (d / &g1);
    if m.is_negative() {
        Rat(BigRational::new_raw(-n, -m))
    } else {
        Rat(BigRational::new_raw(n, m))
    }
}

/// `a/b + c/d` for lowest-terms inputs, reducing only by `gcd(b, d)`.
fn add_reduced(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Rat {
    let g = gcd(b, d);
    if g.is_one() {
        return Rat(BigRational::new_raw(a * d + c * b, b * d));
    }
    let t = a * (d / &g) + c * (b / &g);
    let g2 = gcd(&t, &g);
    if t.is_zero() {
        return Rat::zero();
    }
    Rat(BigRational::new_raw(&t / &g2, (b / &g) * (d / &g2)))
}

macro_rules! reduced_binop {
    ($tr:ident, $method:ident, |$x:ident, $y:ident| $body:expr) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                let ($x, $y) = (self, rhs);
                $body
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                (&self).$method(rhs)
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                self.$method(&rhs)
            }
        }
    };
}

reduced_binop!(Add, add, |x, y| add_reduced(x.numer(), x.denom(), y.numer(), y.denom()));
reduced_binop!(Sub, sub, |x, y| add_reduced(x.numer(), x.denom(), &-y.numer(), y.denom()));
reduced_binop!(Mul, mul, |x, y| mul_reduced(x.numer(), x.denom(), y.numer(), y.denom()));
// Division by zero panics; callers check `is_zero` first.
reduced_binop!(Div, div, |x, y| {
    assert!(!y.is_zero(), "division by zero");
    mul_reduced(x.numer(), x.denom(), y.denom(), y.numer())
});

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}
