use std::fmt;
use std::sync::Arc;

use super::pl::PlGerm;
use super::ratexpr::RatExpr;
use crate::error::{GermError, Result};
use crate::rat::Rat;

pub type ValueFn = dyn Fn(u64) -> Result<Rat> + Send + Sync;

/// How the grid values of a rational germ or sequence are produced.
#[derive(Clone)]
pub enum Profile {
    Expr(RatExpr),
    /// Explicit values for consecutive indices from the owner's start.
    Table(Arc<[Rat]>),
    /// `scale / K(j)`; keeps the certified comparison route available.
    ScaledPl { scale: Rat, pl: PlGerm },
    Func { label: String, f: Arc<ValueFn> },
}

impl Profile {
    pub fn func(label: impl Into<String>, f: impl Fn(u64) -> Result<Rat> + Send + Sync + 'static) -> Profile {
        Profile::Func {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    pub(crate) fn eval(&self, start: u64, j: u64) -> Result<Rat> {
        match self {
            Profile::Expr(e) => e.eval(j),
            Profile::Table(t) => {
                let off = (j - start) as usize;
                t.get(off).cloned().ok_or(GermError::IndexBeyondDomain {
                    index: j,
                    end: start + t.len() as u64 - 1,
                })
            }
            Profile::ScaledPl { scale, pl } => Ok(scale * pl.value(j)?),
            Profile::Func { f, .. } => f(j),
        }
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::Expr(e) => write!(f, "v(j) = {e}"),
            Profile::Table(t) => write!(f, "table[{}]", t.len()),
            Profile::ScaledPl { scale, pl } => write!(f, "{scale} * {pl:?}"),
            Profile::Func { label, .. } => write!(f, "<{label}>"),
        }
    }
}

/// Monotonicity tier of a rational germ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tier {
    /// No monotonicity claimed (e.g. a quotient that failed re-validation).
    Unclassified,
    PseudoMonotone,
    StrictMonotone,
    StrictMonotoneContinuousIntent,
}

impl Tier {
    pub fn name(self) -> &'static str {
        match self {
            Tier::Unclassified => "UNCLASSIFIED",
            Tier::PseudoMonotone => "PSEUDO_MONOTONE",
            Tier::StrictMonotone => "STRICT_MONOTONE",
            Tier::StrictMonotoneContinuousIntent => "STRICT_MONOTONE_CONTINUOUS_INTENT",
        }
    }
}

/// A (pseudo)monotone germ given by exact rational values on the grid.
#[derive(Clone, Debug)]
pub struct RatGerm {
    start: u64,
    end: Option<u64>,
    profile: Profile,
    tier: Tier,
}

impl RatGerm {
    pub fn new(start: u64, profile: Profile, tier: Tier) -> RatGerm {
        assert!(start >= 1, "grid indices start at 1");
        let end = match &profile {
            Profile::Table(t) => Some(start + t.len() as u64 - 1),
            _ => None,
        };
        RatGerm { start, end, profile, tier }
    }

    pub fn from_expr(expr: RatExpr, tier: Tier) -> RatGerm {
        RatGerm::new(1, Profile::Expr(expr), tier)
    }

    pub fn from_table(start: u64, values: Vec<Rat>, tier: Tier) -> RatGerm {
        assert!(!values.is_empty(), "empty table");
        RatGerm::new(start, Profile::Table(values.into()), tier)
    }

    pub fn from_fn(
        start: u64,
        tier: Tier,
        label: impl Into<String>,
        f: impl Fn(u64) -> Result<Rat> + Send + Sync + 'static,
    ) -> RatGerm {
        RatGerm::new(start, Profile::func(label, f), tier)
    }

    /// The PL germ viewed as a rational profile; values are unchanged.
    pub fn embed(pl: &PlGerm) -> RatGerm {
        RatGerm::scaled_pl(Rat::one(), pl.clone())
    }

    pub fn scaled_pl(scale: Rat, pl: PlGerm) -> RatGerm {
        RatGerm::new(pl.start(), Profile::ScaledPl { scale, pl }, Tier::StrictMonotone)
    }

    pub fn with_end(mut self, end: u64) -> RatGerm {
        self.end = Some(self.end.map_or(end, |e| e.min(end)));
        self
    }

    pub fn with_tier(mut self, tier: Tier) -> RatGerm {
        self.tier = tier;
        self
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn end(&self) -> Option<u64> {
        self.end
    }

    pub fn tier(&self) -> Tier {
        self.tier
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn value(&self, j: u64) -> Result<Rat> {
        check_domain(self.start, self.end, j)?;
        self.profile.eval(self.start, j)
    }
}

/// Germ at index infinity of a strictly decreasing positive sequence.
#[derive(Clone, Debug)]
pub struct SeqGerm {
    start: u64,
    end: Option<u64>,
    terms: Profile,
}

impl SeqGerm {
    pub fn new(start: u64, terms: Profile) -> SeqGerm {
        assert!(start >= 1, "sequence indices start at 1");
        let end = match &terms {
            Profile::Table(t) => Some(start + t.len() as u64 - 1),
            _ => None,
        };
        SeqGerm { start, end, terms }
    }

    pub fn from_expr(expr: RatExpr) -> SeqGerm {
        SeqGerm::new(1, Profile::Expr(expr))
    }

    pub fn from_fn(start: u64, label: impl Into<String>, f: impl Fn(u64) -> Result<Rat> + Send + Sync + 'static) -> SeqGerm {
        SeqGerm::new(start, Profile::func(label, f))
    }

    pub fn from_table(start: u64, terms: Vec<Rat>) -> SeqGerm {
        assert!(!terms.is_empty(), "empty table");
        SeqGerm::new(start, Profile::Table(terms.into()))
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn end(&self) -> Option<u64> {
        self.end
    }

    pub fn with_end(mut self, end: u64) -> SeqGerm {
        self.end = Some(self.end.map_or(end, |e| e.min(end)));
        self
    }

    pub fn terms(&self) -> &Profile {
        &self.terms
    }

    pub fn term(&self, i: u64) -> Result<Rat> {
        check_domain(self.start, self.end, i)?;
        self.terms.eval(self.start, i)
    }
}

fn check_domain(start: u64, end: Option<u64>, j: u64) -> Result<()> {
    if j < start {
        return Err(GermError::IndexBeforeStart { index: j, start });
    }
    if let Some(end) = end {
        if j > end {
            return Err(GermError::IndexBeyondDomain { index: j, end });
        }
    }
    Ok(())
}
