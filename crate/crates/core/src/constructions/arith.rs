use crate::error::{GermError, Result};
use crate::germ::{validate, CodeGen, Germ, GridWindow, PlGerm, Profile, RatGerm, Tier};
use crate::order::{compare_germwise, CompareMode, OrderVerdict};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Div,
    Scale(Rat),
}

fn scaled_pl(g: &Germ) -> Option<(Rat, PlGerm)> {
    match g {
        Germ::Pl(p) => Some((Rat::one(), p.clone())),
        Germ::Rat(r) => match r.profile() {
            Profile::ScaledPl { scale, pl } => Some((scale.clone(), pl.clone())),
            _ => None,
        },
        _ => None,
    }
}

fn common_domain(a: &Germ, b: &Germ) -> Result<(u64, Option<u64>)> {
    let start = a.start().max(b.start());
    let end = match (a.end(), b.end()) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (e, None) | (None, e) => e,
    };
    if end.is_some_and(|e| e < start) {
        return Err(GermError::DomainMismatch(format!(
            "domains [{}, ..] and [{}, ..] do not overlap",
            a.start(),
            b.start()
        )));
    }
    Ok((start, end))
}

fn pl_product(a: &PlGerm, b: &PlGerm) -> PlGerm {
    let start = a.start().max(b.start());
    let closed = match (a.closed_tail(), b.closed_tail()) {
        (Some(pa), Some(pb)) if a.head().is_empty() && b.head().is_empty() => pa.mul(pb),
        _ => None,
    };
    match closed {
        Some(poly) => PlGerm::new(start, CodeGen::Closed(poly)),
        None => {
            let (a, b) = (a.clone(), b.clone());
            PlGerm::new(start, CodeGen::custom("product", move |j| Ok(a.code(j)? * b.code(j)?)))
        }
    }
}

/// Re-validates on a probe window and tags the strongest tier observed.
fn retier(r: RatGerm) -> RatGerm {
    let g = Germ::Rat(r.clone().with_tier(Tier::Unclassified));
    let report = validate(&g, &super::probe_window(&g));
    let tier = match report.tier {
        Some(Tier::StrictMonotoneContinuousIntent) | Some(Tier::StrictMonotone) => Tier::StrictMonotone,
        Some(t) => t,
        None => Tier::Unclassified,
    };
    r.with_tier(tier)
}

fn pointwise(
    a: &Germ,
    b: &Germ,
    label: &str,
    f: impl Fn(u64, Rat, Rat) -> Result<Rat> + Send + Sync + 'static,
) -> Result<Germ> {
    let (start, end) = common_domain(a, b)?;
    let (a, b) = (a.clone(), b.clone());
    let r = RatGerm::from_fn(start, Tier::Unclassified, label, move |j| f(j, a.value(j)?, b.value(j)?));
    let r = match end {
        Some(e) => r.with_end(e),
        None => r,
    };
    Ok(Germ::Rat(retier(r)))
}

/// Pointwise exact arithmetic on grid values. `b` is ignored for `Scale`.
///
/// Products of PL germs stay PL (`1/k * 1/k' = 1/(k k')`), products and
/// scalings of scaled PL germs keep their certified form, and every other
/// result is a rational germ tiered by re-validation.
pub fn arithmetic(op: &ArithOp, a: &Germ, b: Option<&Germ>) -> Result<Germ> {
    if let ArithOp::Scale(q) = op {
        if !q.is_positive() {
            return Err(GermError::Invalid(format!("scale factor must be positive, got {q}")));
        }
        return Ok(a.scaled(q));
    }
    let b = b.ok_or_else(|| GermError::Invalid("binary operation needs two operands".into()))?;
    match op {
        ArithOp::Mul => {
            if a.is_zero() || b.is_zero() {
                return Ok(Germ::Zero);
            }
            if let (Some((sa, pa)), Some((sb, pb))) = (scaled_pl(a), scaled_pl(b)) {
                let prod = pl_product(&pa, &pb);
                let scale = sa * sb;
                return Ok(if scale == Rat::one() {
                    Germ::Pl(prod)
                } else {
                    Germ::Rat(RatGerm::scaled_pl(scale, prod))
                });
            }
            pointwise(a, b, "product", |_, x, y| Ok(x * y))
        }
        ArithOp::Add => {
            if a.is_zero() {
                return Ok(b.clone());
            }
            if b.is_zero() {
                return Ok(a.clone());
            }
            pointwise(a, b, "sum", |_, x, y| Ok(x + y))
        }
        ArithOp::Div => {
            if b.is_zero() {
                return Err(GermError::DivisionByZero(b.start()));
            }
            if a.is_zero() {
                return Ok(Germ::Zero);
            }
            pointwise(a, b, "quotient", |j, x, y| {
                if y.is_zero() {
                    return Err(GermError::DivisionByZero(j));
                }
                Ok(x / y)
            })
        }
        ArithOp::Scale(_) => unreachable!(),
    }
}

/// Radius `m * r` of the germwise neighborhood mapped into `U(r)` by
/// division through `m`.
pub fn open_mult_radius(m: &Germ, r: &Germ) -> Result<Germ> {
    arithmetic(&ArithOp::Mul, m, Some(r))
}

/// Evidence for the factorization contract of [`open_mult_radius`].
#[derive(Debug, Clone)]
pub struct RadiusCheck {
    pub radius: Germ,
    /// `h` against the radius.
    pub membership: OrderVerdict,
    /// `h/m` against `r`, computed when `h` is below the radius.
    pub quotient: Option<OrderVerdict>,
}

impl RadiusCheck {
    pub fn is_member(&self) -> bool {
        self.membership.is_lt()
    }

    pub fn factors(&self) -> bool {
        self.quotient.as_ref().is_some_and(|q| q.is_lt())
    }
}

/// Checks `h < m*r  =>  h/m < r` for one germ `h` on `window`.
pub fn radius_factorization(m: &Germ, r: &Germ, h: &Germ, window: &GridWindow) -> Result<RadiusCheck> {
    let radius = open_mult_radius(m, r)?;
    let membership = compare_germwise(h, &radius, window, CompareMode::Auto)?;
    let quotient = if membership.is_lt() {
        let q = arithmetic(&ArithOp::Div, h, Some(m))?;
        Some(compare_germwise(&q, r, window, CompareMode::Auto)?)
    } else {
        None
    };
    Ok(RadiusCheck { radius, membership, quotient })
}
