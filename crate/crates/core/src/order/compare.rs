use std::cmp::Ordering;

use super::verdict::{OrderVerdict, VerdictKind};
use crate::error::{GermError, Result};
use crate::germ::{CertForm, ExpPoly, Germ, GridWindow};

/// Which comparison routes `compare_germwise` may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CompareMode {
    /// Certified route when both germs admit it, horizon scan otherwise.
    #[default]
    Auto,
    CertifiedOnly,
    HorizonOnly,
}

fn value_sign(a: &Germ, b: &Germ, j: u64) -> Result<Ordering> {
    Ok(a.value(j)?.cmp(&b.value(j)?))
}

/// Least `j1 >= window.from` such that the sign of `a - b` is constant on
/// `[j1, window.to]`, together with that sign.
pub(crate) fn stable_tail(a: &Germ, b: &Germ, window: &GridWindow) -> Result<(u64, Ordering)> {
    let sign = value_sign(a, b, window.to())?;
    let mut j = window.to();
    while j > window.from() && value_sign(a, b, j - 1)? == sign {
        j -= 1;
    }
    Ok((j, sign))
}

fn scan_verdict(a: &Germ, b: &Germ, window: &GridWindow) -> Result<OrderVerdict> {
    let (j1, sign) = stable_tail(a, b, window)?;
    let kind = if j1 > window.tail_half_start() {
        VerdictKind::Mixed
    } else {
        match sign {
            Ordering::Less => VerdictKind::HoldsUptoLt,
            Ordering::Greater => VerdictKind::HoldsUptoGt,
            Ordering::Equal => VerdictKind::EqualFrom,
        }
    };
    Ok(OrderVerdict::new(kind, j1, window.to()))
}

/// `D = L*s_b*K_a - L*s_a*K_b`; `a < b` eventually iff `D > 0` eventually.
fn cleared_difference(ca: &CertForm<'_>, cb: &CertForm<'_>) -> ExpPoly {
    let l = ca.scale.denom_lcm(&cb.scale);
    let sa = (&ca.scale * crate::Rat::from_int(l.clone())).numer().clone();
    let sb = (&cb.scale * crate::Rat::from_int(l)).numer().clone();
    ca.poly.scale(&sb).sub(&cb.poly.scale(&sa))
}

fn certified(a: &Germ, b: &Germ, window: &GridWindow) -> Option<Result<OrderVerdict>> {
    let ca = a.cert_form()?;
    let cb = b.cert_form()?;
    Some(certified_forms(a, b, &ca, &cb, window))
}

fn certified_forms(
    a: &Germ,
    b: &Germ,
    ca: &CertForm<'_>,
    cb: &CertForm<'_>,
    window: &GridWindow,
) -> Result<OrderVerdict> {
    let diff = cleared_difference(ca, cb);
    let tails_from = ca.pl.tail_start().max(cb.pl.tail_start()).max(window.from());
    let (kind, expected, from, certificate) = if diff.is_zero() {
        (
            VerdictKind::EqualFrom,
            Ordering::Equal,
            tails_from,
            "identical generators after scaling".to_string(),
        )
    } else {
        let (sign, jstar) = diff.eventual_sign().ok_or_else(|| {
            GermError::NotCertifiable(format!("no crossover bound found for {diff}"))
        })?;
        let (lead, coef) = diff.leading().expect("nonzero");
        let lead_txt = ExpPoly::monomial(coef.clone(), lead);
        let cert = format!("scale-cleared K_a, K_b difference {diff} has leading term {lead_txt}, sign fixed from j={jstar}");
        match sign {
            Ordering::Greater => (VerdictKind::CertifiedLt, Ordering::Less, tails_from.max(jstar), cert),
            _ => (VerdictKind::CertifiedGt, Ordering::Greater, tails_from.max(jstar), cert),
        }
    };
    // extend the certified tail downward through the exact values
    let mut j = from;
    while j > window.from() && value_sign(a, b, j - 1)? == expected {
        j -= 1;
    }
    Ok(OrderVerdict {
        kind,
        witness_index: j,
        horizon: window.to(),
        certificate: Some(certificate),
    })
}

/// Decides (certified route) or semidecides (horizon scan) the germ order
/// of `a` and `b` on `window`.
pub fn compare_germwise(a: &Germ, b: &Germ, window: &GridWindow, mode: CompareMode) -> Result<OrderVerdict> {
    a.check_window(window)?;
    b.check_window(window)?;
    match mode {
        CompareMode::HorizonOnly => scan_verdict(a, b, window),
        CompareMode::CertifiedOnly => certified(a, b, window).unwrap_or_else(|| {
            Err(GermError::NotCertifiable(
                "both germs need closed-form generators".into(),
            ))
        }),
        CompareMode::Auto => match certified(a, b, window) {
            Some(Ok(v)) => Ok(v),
            Some(Err(GermError::NotCertifiable(_))) | None => scan_verdict(a, b, window),
            Some(Err(e)) => Err(e),
        },
    }
}

/// `EQUAL_FROM(j1)` with minimal `j1` if the values agree on `[j1, to]`,
/// `DIFFER_THROUGHOUT` if they differ at the horizon. Never claims anything
/// beyond the window.
pub fn canonical_eq(a: &Germ, b: &Germ, window: &GridWindow) -> Result<OrderVerdict> {
    a.check_window(window)?;
    b.check_window(window)?;
    if value_sign(a, b, window.to())? != Ordering::Equal {
        return Ok(OrderVerdict::new(VerdictKind::DifferThroughout, window.to(), window.to()));
    }
    let (j1, _) = stable_tail(a, b, window)?;
    Ok(OrderVerdict::new(VerdictKind::EqualFrom, j1, window.to()))
}

/// Strict `a < b` at every index of the window; otherwise `FAILS_AT` the
/// first index where it does not hold.
pub fn require_lt_everywhere(a: &Germ, b: &Germ, window: &GridWindow) -> Result<OrderVerdict> {
    a.check_window(window)?;
    b.check_window(window)?;
    for j in window.indices() {
        if value_sign(a, b, j)? != Ordering::Less {
            return Ok(OrderVerdict::new(VerdictKind::FailsAt, j, window.to()));
        }
    }
    Ok(OrderVerdict::new(VerdictKind::HoldsUptoLt, window.from(), window.to()))
}
