use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{GermError, Result};
use crate::germ::{validate, CodeGen, Germ, PlGerm};
use crate::DEFAULT_HORIZON;

/// An indexable family `p_1, p_2, ...` of PL germs. Streams are replayable:
/// member `j` is recomputed on demand.
#[derive(Clone)]
pub enum Family {
    Finite(Vec<PlGerm>),
    Stream(Arc<dyn Fn(u64) -> PlGerm + Send + Sync>),
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Finite(v) => write!(f, "Family::Finite({} members)", v.len()),
            Family::Stream(_) => write!(f, "Family::Stream"),
        }
    }
}

impl Family {
    pub fn stream(f: impl Fn(u64) -> PlGerm + Send + Sync + 'static) -> Family {
        Family::Stream(Arc::new(f))
    }

    pub fn size(&self) -> Option<u64> {
        match self {
            Family::Finite(v) => Some(v.len() as u64),
            Family::Stream(_) => None,
        }
    }

    /// Member `j`, 1-based.
    pub fn member(&self, j: u64) -> PlGerm {
        match self {
            Family::Finite(v) => v[(j - 1) as usize].clone(),
            Family::Stream(f) => f(j),
        }
    }

    fn members_upto(&self, k: u64) -> u64 {
        self.size().map_or(k, |n| n.min(k))
    }
}

/// `L(k) = max{K_j(k) : j <= min(k, size), start_j <= k} + k`.
fn diagonal_code(family: &Family, k: u64) -> Result<BigInt> {
    let mut best: Option<BigInt> = None;
    for j in 1..=family.members_upto(k) {
        let p = family.member(j);
        if p.start() > k {
            continue;
        }
        let c = p.positive_code(k)?;
        if best.as_ref().is_none_or(|b| &c > b) {
            best = Some(c);
        }
    }
    best.map(|b| b + BigInt::from(k))
        .ok_or(GermError::IndexBeforeStart { index: k, start: k + 1 })
}

/// A PL germ strictly below member `j` at every `k >= max(j, start_j)`.
pub fn diagonal_below(family: &Family) -> Result<PlGerm> {
    if let Family::Finite(v) = family {
        if v.is_empty() {
            return Err(GermError::EmptyFamily);
        }
        for p in v {
            let g = Germ::Pl(p.clone());
            let report = validate(&g, &super::probe_window(&g));
            if let Some(j) = report.first_violation {
                return Err(GermError::NotStrictlyMonotone(j));
            }
        }
    }
    let start = (1..=DEFAULT_HORIZON)
        .find(|&k| (1..=family.members_upto(k)).any(|j| family.member(j).start() <= k))
        .ok_or(GermError::EmptyFamily)?;
    let fam = family.clone();
    let out = PlGerm::new(start, CodeGen::custom("diagonal", move |k| diagonal_code(&fam, k)));
    super::probe_strict(&Germ::Pl(out.clone()))?;
    Ok(out)
}
