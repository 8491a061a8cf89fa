//! Exact germ representations on the grid `{1/j}`.

mod expoly;
mod pl;
mod profile;
mod ratexpr;
mod validate;
mod window;

pub use expoly::{ExpPoly, TermKey};
pub use pl::{CodeFn, CodeGen, PlGerm};
pub use profile::{Profile, RatGerm, SeqGerm, Tier, ValueFn};
pub use ratexpr::{Exponent, RatExpr};
pub use validate::{validate, Check, LimitEvidence, ValidationReport};
pub use window::GridWindow;

use crate::error::Result;
use crate::rat::Rat;

/// Any germ the library works with. `Zero` is the distinguished zero germ,
/// kept apart from the positive classes.
#[derive(Clone, Debug)]
pub enum Germ {
    Zero,
    Pl(PlGerm),
    Rat(RatGerm),
    Seq(SeqGerm),
}

/// `scale / K(j)` with a certified tail generator.
#[derive(Clone, Debug)]
pub struct CertForm<'a> {
    pub scale: Rat,
    pub pl: &'a PlGerm,
    pub poly: &'a ExpPoly,
}

impl Germ {
    pub fn start(&self) -> u64 {
        match self {
            Germ::Zero => 1,
            Germ::Pl(p) => p.start(),
            Germ::Rat(r) => r.start(),
            Germ::Seq(s) => s.start(),
        }
    }

    pub fn end(&self) -> Option<u64> {
        match self {
            Germ::Zero | Germ::Pl(_) => None,
            Germ::Rat(r) => r.end(),
            Germ::Seq(s) => s.end(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Germ::Zero)
    }

    pub fn as_pl(&self) -> Option<&PlGerm> {
        match self {
            Germ::Pl(p) => Some(p),
            _ => None,
        }
    }

    /// Value at grid point `1/j` (or sequence term `j`).
    pub fn value(&self, j: u64) -> Result<Rat> {
        match self {
            Germ::Zero => {
                if j == 0 {
                    return Err(crate::GermError::IndexBeforeStart { index: 0, start: 1 });
                }
                Ok(Rat::zero())
            }
            Germ::Pl(p) => p.value(j),
            Germ::Rat(r) => r.value(j),
            Germ::Seq(s) => s.term(j),
        }
    }

    pub fn cert_form(&self) -> Option<CertForm<'_>> {
        let (scale, pl) = match self {
            Germ::Pl(p) => (Rat::one(), p),
            Germ::Rat(r) => match r.profile() {
                Profile::ScaledPl { scale, pl } => (scale.clone(), pl),
                _ => return None,
            },
            _ => return None,
        };
        let poly = pl.closed_tail()?;
        Some(CertForm { scale, pl, poly })
    }

    /// `q * self`, keeping the certified form when there is one.
    pub fn scaled(&self, q: &Rat) -> Germ {
        match self {
            Germ::Zero => Germ::Zero,
            Germ::Pl(p) => Germ::Rat(RatGerm::scaled_pl(q.clone(), p.clone())),
            Germ::Rat(r) => {
                let scaled = match r.profile() {
                    Profile::ScaledPl { scale, pl } => RatGerm::scaled_pl(q * scale, pl.clone()),
                    _ => {
                        let inner = r.clone();
                        let q = q.clone();
                        RatGerm::from_fn(r.start(), r.tier(), format!("{q} * germ"), move |j| {
                            Ok(&q * inner.value(j)?)
                        })
                    }
                };
                let scaled = scaled.with_tier(r.tier());
                Germ::Rat(match r.end() {
                    Some(e) => scaled.with_end(e),
                    None => scaled,
                })
            }
            Germ::Seq(s) => {
                let inner = s.clone();
                let q = q.clone();
                let seq = SeqGerm::from_fn(s.start(), format!("{q} * seq"), move |i| Ok(&q * inner.term(i)?));
                Germ::Seq(match s.end() {
                    Some(e) => seq.with_end(e),
                    None => seq,
                })
            }
        }
    }

    /// Checks that `window` lies inside the germ's domain.
    pub fn check_window(&self, window: &GridWindow) -> Result<()> {
        if window.from() < self.start() {
            return Err(crate::GermError::IndexBeforeStart {
                index: window.from(),
                start: self.start(),
            });
        }
        if let Some(end) = self.end() {
            if window.to() > end {
                return Err(crate::GermError::IndexBeyondDomain { index: window.to(), end });
            }
        }
        Ok(())
    }
}

impl From<PlGerm> for Germ {
    fn from(p: PlGerm) -> Germ {
        Germ::Pl(p)
    }
}

impl From<RatGerm> for Germ {
    fn from(r: RatGerm) -> Germ {
        Germ::Rat(r)
    }
}

impl From<SeqGerm> for Germ {
    fn from(s: SeqGerm) -> Germ {
        Germ::Seq(s)
    }
}

/// Exact value of `g` at grid index `j`.
pub fn eval_at(g: &Germ, j: u64) -> Result<Rat> {
    g.value(j)
}
