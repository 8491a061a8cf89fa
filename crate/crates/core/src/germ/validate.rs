use num_bigint::BigInt;
use num_traits::One;

use super::{Germ, GridWindow, Tier};
use crate::rat::Rat;

/// One invariant checked over a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    /// Whether a failure makes the germ invalid for its declared class.
    pub required: bool,
    pub first_violation: Option<u64>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// "Dropped below `1/threshold` by index `index`".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitEvidence {
    pub threshold: BigInt,
    pub index: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub window: GridWindow,
    pub checks: Vec<Check>,
    pub first_violation: Option<u64>,
    /// Largest threshold reached at the window end, if any.
    pub limit: Option<LimitEvidence>,
    /// Whether the profile dropped below every tested threshold `1/2^k`
    /// (`2^k` up to the window length).
    pub limit_verified: bool,
    /// Strongest tier whose grid conditions hold on the window.
    pub tier: Option<Tier>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| !c.required || c.passed())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Scan {
    values: Vec<(u64, Rat)>,
    eval_failure: Option<u64>,
}

fn scan(g: &Germ, window: &GridWindow) -> Scan {
    let mut values = Vec::with_capacity(window.len() as usize);
    for j in window.indices() {
        match g.value(j) {
            Ok(v) => values.push((j, v)),
            Err(_) => return Scan { values, eval_failure: Some(j) },
        }
    }
    Scan { values, eval_failure: None }
}

fn first_where(values: &[(u64, Rat)], bad: impl Fn(&Rat, &Rat) -> bool) -> Option<u64> {
    values
        .windows(2)
        .find(|w| bad(&w[0].1, &w[1].1))
        .map(|w| w[1].0)
}

fn limit_evidence(values: &[(u64, Rat)]) -> Option<LimitEvidence> {
    let last = &values.last()?.1;
    if !last.is_positive() {
        return None;
    }
    // largest n with last < 1/n
    let n = last.recip()?.ceil() - BigInt::one();
    if n < BigInt::one() {
        return None;
    }
    let bound = Rat::recip_int(n.clone());
    let index = values.iter().find(|(_, v)| v < &bound)?.0;
    Some(LimitEvidence { threshold: n, index })
}

fn limit_verified(ev: &Option<LimitEvidence>, window: &GridWindow) -> bool {
    let mut needed = BigInt::from(2);
    while needed.clone() * 2 <= BigInt::from(window.len()) {
        needed *= 2;
    }
    ev.as_ref().is_some_and(|e| e.threshold >= needed)
}

/// Checks the monotonicity invariants of `g` on `window`. Violations are
/// report content, never errors.
pub fn validate(g: &Germ, window: &GridWindow) -> ValidationReport {
    let s = scan(g, window);
    let mut checks = Vec::new();

    let positive = s
        .values
        .iter()
        .find(|(_, v)| !v.is_positive())
        .map(|(j, _)| *j)
        .or(s.eval_failure);

    let (declared_monotone, declared_strict, at_most_one) = match g {
        Germ::Zero => {
            checks.push(Check { name: "nonzero_germ", required: true, first_violation: Some(window.from()) });
            (true, false, false)
        }
        Germ::Pl(_) | Germ::Seq(_) => (true, true, false),
        Germ::Rat(r) => (r.tier() >= Tier::PseudoMonotone, r.tier() >= Tier::StrictMonotone, true),
    };

    let pos_name = match g {
        Germ::Pl(_) => "positive_codes",
        Germ::Seq(_) => "positive_terms",
        _ => "positive_values",
    };
    checks.push(Check { name: pos_name, required: true, first_violation: positive });

    let nonincreasing = first_where(&s.values, |a, b| b > a);
    let strict = first_where(&s.values, |a, b| b >= a);
    match g {
        Germ::Pl(_) => {
            checks.push(Check { name: "strictly_increasing_codes", required: true, first_violation: strict });
        }
        Germ::Seq(_) => {
            checks.push(Check { name: "strictly_decreasing", required: true, first_violation: strict });
        }
        _ => {
            checks.push(Check { name: "nonincreasing", required: declared_monotone, first_violation: nonincreasing });
            checks.push(Check { name: "strictly_decreasing", required: declared_strict, first_violation: strict });
        }
    }
    if at_most_one {
        let over = s.values.iter().find(|(_, v)| v > &Rat::one()).map(|(j, _)| *j);
        checks.push(Check { name: "at_most_one", required: false, first_violation: over });
    }

    let first_violation = checks
        .iter()
        .filter(|c| c.required)
        .filter_map(|c| c.first_violation)
        .min();

    let monotone_ok = positive.is_none() && nonincreasing.is_none() && !g.is_zero();
    let limit = if monotone_ok { limit_evidence(&s.values) } else { None };
    let limit_ok = limit_verified(&limit, window);

    let tier = if !monotone_ok {
        None
    } else if strict.is_some() {
        Some(Tier::PseudoMonotone)
    } else {
        match g {
            Germ::Pl(_) => Some(Tier::StrictMonotoneContinuousIntent),
            Germ::Rat(r) if r.tier() == Tier::StrictMonotoneContinuousIntent => Some(r.tier()),
            _ => Some(Tier::StrictMonotone),
        }
    };

    ValidationReport {
        window: *window,
        checks,
        first_violation,
        limit,
        limit_verified: limit_ok,
        tier,
    }
}
