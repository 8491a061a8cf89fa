//! PL minorants of pseudo-monotone germs.
//!
//! Two stages. First the threshold points: grid indices `a` where the
//! profile first drops below some `1/n` (so `m(a) < 1/n <= m(a-1)`). An
//! intermediate profile takes the value `m(a_{k+2})` at `a_k` and is affine
//! in `t = 1/j` between consecutive threshold points. Second, integer codes
//! `K(j) = ceil(1 / w(1/(j+1))) + 1`, forced strictly increasing.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{GermError, Result};
use crate::germ::{validate, CodeGen, Germ, GridWindow, PlGerm};
use crate::rat::Rat;

/// A PL germ strictly below the input on `[valid_from, horizon]`.
#[derive(Debug, Clone)]
pub struct Minorant {
    pub germ: PlGerm,
    pub valid_from: u64,
    pub horizon: u64,
}

fn scan_limit(m: &Germ, horizon: u64) -> u64 {
    let limit = horizon.saturating_mul(8).saturating_add(64);
    m.end().map_or(limit, |e| e.min(limit))
}

/// Threshold points and the profile values there, enough to cover the
/// intermediate profile on `[a_1, upto]`.
fn threshold_points(m: &Germ, upto: u64, limit: u64) -> Result<Vec<(u64, Rat)>> {
    let mut pts: Vec<(u64, Rat)> = Vec::new();
    let start = m.start();
    let mut prev = m.value(start)?;
    if prev < Rat::one() {
        pts.push((start, prev.clone()));
    }
    let mut beyond = pts.iter().filter(|(a, _)| *a >= upto).count();
    let mut i = start;
    while beyond < 3 {
        i += 1;
        if i > limit {
            return Err(GermError::LimitUnverified(format!(
                "only {} threshold drops found up to index {limit}",
                pts.len()
            )));
        }
        let v = m.value(i)?;
        let n = prev
            .recip()
            .ok_or_else(|| GermError::Invalid(format!("zero value at index {}", i - 1)))?
            .ceil();
        if Rat::from_int(n) < v.recip().ok_or_else(|| GermError::Invalid(format!("zero value at index {i}")))? {
            if i >= upto {
                beyond += 1;
            }
            pts.push((i, v.clone()));
        }
        prev = v;
    }
    Ok(pts)
}

/// Integer codes on `[first, upto]`.
fn codes(m: &Germ, horizon: u64) -> Result<(u64, Vec<BigInt>)> {
    let pts = threshold_points(m, horizon + 1, scan_limit(m, horizon))?;
    let a1 = pts[0].0;
    let first = m.start().max(a1.saturating_sub(1)).max(1);
    let mut out = Vec::with_capacity((horizon.saturating_sub(first) + 1) as usize);
    let mut k = 0usize;
    let mut last: Option<BigInt> = None;
    for j in first..=horizon {
        let i = j + 1;
        while pts[k + 1].0 < i {
            k += 1;
        }
        // pts[k].0 <= i <= pts[k+1].0 < pts[k+2].0 < pts[k+3].0
        let w_hi = &pts[k + 2].1;
        let w_lo = &pts[k + 3].1;
        let w = if i == pts[k].0 {
            w_hi.clone()
        } else if i == pts[k + 1].0 {
            w_lo.clone()
        } else {
            let t_hi = Rat::recip_int(pts[k].0);
            let t_lo = Rat::recip_int(pts[k + 1].0);
            let t = Rat::recip_int(i);
            w_lo + (t - &t_lo) * ((w_hi - w_lo) / (t_hi - t_lo))
        };
        let mut code = w.recip().expect("positive intermediate profile").ceil() + BigInt::one();
        if let Some(prev) = &last {
            if &code <= prev {
                code = prev + BigInt::one();
            }
        }
        last = Some(code.clone());
        out.push(code);
    }
    Ok((first, out))
}

/// Builds a PL germ strictly below the pseudo-monotone germ `m` on the grid
/// up to `horizon` (and beyond, lazily).
pub fn minorize_to_pl(m: &Germ, horizon: u64) -> Result<Minorant> {
    if m.is_zero() {
        return Err(GermError::Invalid("the zero germ has no positive minorant".into()));
    }
    let window = GridWindow::new(m.start(), horizon.max(m.start()))?;
    let report = validate(m, &window);
    if report.tier.is_none() {
        return Err(GermError::Invalid(format!(
            "minorant needs a pseudo-monotone germ; violation at index {}",
            report.first_violation.unwrap_or(window.from())
        )));
    }

    let (first, table) = codes(m, horizon)?;
    let source = Arc::new(m.clone());
    let tail_from = first + table.len() as u64;
    let tail = CodeGen::custom("minorant", move |j| {
        let (f, t) = codes(&source, j.max(tail_from))?;
        Ok(t[(j - f) as usize].clone())
    });
    let germ = PlGerm::with_head(first, table, tail);

    // least j1 with strict inequality on [j1, horizon]
    let pl = Germ::Pl(germ.clone());
    let mut valid_from = horizon + 1;
    for j in (first..=horizon).rev() {
        if pl.value(j)? < m.value(j)? {
            valid_from = j;
        } else {
            break;
        }
    }
    Ok(Minorant { germ, valid_from, horizon })
}
