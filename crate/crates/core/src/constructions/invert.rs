use num_bigint::BigInt;

use crate::error::{GermError, Result};
use crate::germ::{Germ, PlGerm, RatGerm, Tier};
use crate::rat::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InvertMode {
    /// Transposed anchors, affinely interpolated in `t` between them.
    #[default]
    Interpolate,
    /// Transposed anchors only; other grid points are outside the domain.
    Switch,
}

/// Largest `j >= start(p)` with `K(j) <= i`, or `None` if `i < K(start)`.
fn anchor_below(p: &PlGerm, i: u64) -> Result<Option<(u64, BigInt)>> {
    let target = BigInt::from(i);
    let lo_code = p.positive_code(p.start())?;
    if lo_code > target {
        return Ok(None);
    }
    // K is strictly increasing with K >= 1, so K(start + i) > i.
    let (mut lo, mut hi) = (p.start(), p.start().checked_add(i).ok_or(GermError::IndexOverflow)?);
    let mut lo_code = lo_code;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let c = p.positive_code(mid)?;
        if c <= target {
            lo = mid;
            lo_code = c;
        } else {
            hi = mid;
        }
    }
    Ok(Some((lo, lo_code)))
}

fn inverse_value(p: &PlGerm, i: u64, mode: InvertMode) -> Result<Rat> {
    let (j, k) = anchor_below(p, i)?.ok_or(GermError::IndexBeforeStart {
        index: i,
        start: u64::try_from(p.positive_code(p.start())?).unwrap_or(u64::MAX),
    })?;
    if k == BigInt::from(i) {
        return Ok(Rat::recip_int(j));
    }
    if mode == InvertMode::Switch {
        return Err(GermError::NotAnAnchor(i));
    }
    let k_next = p.positive_code(j + 1)?;
    let (t_hi, v_hi) = (Rat::recip_int(k), Rat::recip_int(j));
    let (t_lo, v_lo) = (Rat::recip_int(k_next), Rat::recip_int(j + 1));
    let t = Rat::recip_int(i);
    Ok(&v_lo + (t - &t_lo) * ((v_hi - &v_lo) / (t_hi - t_lo)))
}

/// The inverse germ: anchors `1/K(j) -> 1/j`, interpolated between them.
pub fn invert(p: &PlGerm) -> Result<RatGerm> {
    invert_with(p, InvertMode::Interpolate)
}

/// The switch map: the bare anchor transpose `1/K(j) -> 1/j`.
pub fn switch(p: &PlGerm) -> Result<RatGerm> {
    invert_with(p, InvertMode::Switch)
}

pub fn invert_with(p: &PlGerm, mode: InvertMode) -> Result<RatGerm> {
    super::probe_strict(&Germ::Pl(p.clone()))?;
    let start = p.code_index(p.start())?;
    let inner = p.clone();
    let (tier, label) = match mode {
        InvertMode::Interpolate => (Tier::StrictMonotoneContinuousIntent, "inverse"),
        InvertMode::Switch => (Tier::Unclassified, "switch"),
    };
    Ok(RatGerm::from_fn(start, tier, label, move |i| inverse_value(&inner, i, mode)))
}
