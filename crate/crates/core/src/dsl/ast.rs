use std::fmt;

use num_bigint::BigInt;

use crate::constructions::PinchDirection;
use crate::germ::{RatExpr, Tier};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Anchors {
    List(Vec<u64>),
    /// `a(k) = ...`, an integer generator in `k`.
    Rule(RatExpr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GermExpr {
    /// `pl { [start = S;] k(j) = ... }`
    Pl { start: Option<u64>, code: RatExpr },
    /// `rat { [start = S;] v(j) = ... [; tier = ...] }`
    Rat { start: Option<u64>, value: RatExpr, tier: Option<Tier> },
    /// `table { start = S; [..]; tail k(j) = ... }`
    Table { start: u64, head: Vec<BigInt>, tail: RatExpr },
    Compose(Box<GermExpr>, Box<GermExpr>),
    Mul(Box<GermExpr>, Box<GermExpr>),
    Add(Box<GermExpr>, Box<GermExpr>),
    Div(Box<GermExpr>, Box<GermExpr>),
    Scale(Rat, Box<GermExpr>),
    Inv(Box<GermExpr>),
    Switch(Box<GermExpr>),
    Diag(Vec<GermExpr>),
    Minor(Box<GermExpr>),
    Pinch(PinchDirection, Box<GermExpr>, Anchors),
    Ref(String),
}

/// `name: expr` with the position of the name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub expr: GermExpr,
    pub line: usize,
    pub col: usize,
}

pub(crate) fn tier_keyword(t: Tier) -> &'static str {
    match t {
        Tier::Unclassified => "unclassified",
        Tier::PseudoMonotone => "pseudo",
        Tier::StrictMonotone => "strict",
        Tier::StrictMonotoneContinuousIntent => "continuous",
    }
}

pub(crate) fn tier_from_keyword(s: &str) -> Option<Tier> {
    Some(match s {
        "unclassified" => Tier::Unclassified,
        "pseudo" => Tier::PseudoMonotone,
        "strict" => Tier::StrictMonotone,
        "continuous" => Tier::StrictMonotoneContinuousIntent,
        _ => return None,
    })
}

fn list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for GermExpr {
    /// Binary operators fully parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GermExpr::Pl { start, code } => {
                f.write_str("pl { ")?;
                if let Some(s) = start {
                    write!(f, "start = {s}; ")?;
                }
                write!(f, "k(j) = {code} }}")
            }
            GermExpr::Rat { start, value, tier } => {
                f.write_str("rat { ")?;
                if let Some(s) = start {
                    write!(f, "start = {s}; ")?;
                }
                write!(f, "v(j) = {value}")?;
                if let Some(t) = tier {
                    write!(f, "; tier = {}", tier_keyword(*t))?;
                }
                f.write_str(" }")
            }
            GermExpr::Table { start, head, tail } => {
                write!(f, "table {{ start = {start}; [")?;
                list(f, head)?;
                write!(f, "]; tail k(j) = {tail} }}")
            }
            GermExpr::Compose(a, b) => write!(f, "({a} . {b})"),
            GermExpr::Mul(a, b) => write!(f, "({a} * {b})"),
            GermExpr::Add(a, b) => write!(f, "({a} + {b})"),
            GermExpr::Div(a, b) => write!(f, "({a} / {b})"),
            GermExpr::Scale(q, e) => write!(f, "scale({q}, {e})"),
            GermExpr::Inv(e) => write!(f, "inv({e})"),
            GermExpr::Switch(e) => write!(f, "switch({e})"),
            GermExpr::Diag(es) => {
                f.write_str("diag(")?;
                list(f, es)?;
                f.write_str(")")
            }
            GermExpr::Minor(e) => write!(f, "minor({e})"),
            GermExpr::Pinch(dir, e, anchors) => {
                let d = match dir {
                    PinchDirection::Lower => "lower",
                    PinchDirection::Upper => "upper",
                };
                write!(f, "pinch({d}, {e}, anchors = ")?;
                match anchors {
                    Anchors::List(xs) => {
                        f.write_str("[")?;
                        list(f, xs)?;
                        f.write_str("]")?;
                    }
                    Anchors::Rule(r) => write!(f, "a(k) = {}", r.display_in('k'))?,
                }
                f.write_str(")")
            }
            GermExpr::Ref(n) => f.write_str(n),
        }
    }
}

impl fmt::Display for Definition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.expr)
    }
}

/// Canonical text of a germ file.
pub fn format_germ_file(defs: &[Definition]) -> String {
    defs.iter().map(|d| format!("{d}\n")).collect()
}
