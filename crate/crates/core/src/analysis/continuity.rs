use super::profile::oscillation_on;
use super::sample::FuncSample;
use crate::error::{GermError, Result};
use crate::germ::{ExpPoly, Germ, GridWindow, PlGerm};
use crate::order::require_lt_everywhere;
use crate::rat::Rat;

/// `{K(j) = j^d : d = 1..=degrees} ∪ {K(j) = c*2^j : c = 1..=multiples}`.
pub fn default_battery(degrees: u32, multiples: u32) -> Vec<PlGerm> {
    let mut out = Vec::new();
    for d in 1..=degrees {
        out.push(PlGerm::closed(ExpPoly::var().pow(d).expect("monomial")));
    }
    for c in 1..=multiples {
        out.push(PlGerm::closed(ExpPoly::exp(2).scale(&c.into())));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaChoice {
    /// Index into the battery.
    Battery(usize),
    /// `rho / 2`.
    HalfRho,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContinuityVerdict {
    /// For each battery radius `rho` (by index) the radius `sigma` found.
    ContinuousAtHorizon { choices: Vec<(usize, SigmaChoice)> },
    /// Every resolvable `sigma` leaves oscillation at least `floor` on the
    /// whole window for radius `rho`, and `floor >= rho` at the window end.
    DiscontinuousWitness { rho: usize, floor: Rat },
    /// No `sigma` worked for `rho`, but no positive floor either.
    Inconclusive { rho: usize },
}

impl ContinuityVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            ContinuityVerdict::ContinuousAtHorizon { .. } => "CONTINUOUS_AT_HORIZON",
            ContinuityVerdict::DiscontinuousWitness { .. } => "DISCONTINUOUS_WITNESS",
            ContinuityVerdict::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

/// Whether the sample has a nonzero point within `min(1/j, sigma(j))` for
/// every `j` in the window; otherwise the oscillation test is vacuous.
fn resolves(f: &FuncSample, sigma: &Germ, window: &GridWindow) -> Result<bool> {
    let mut radii: Vec<Rat> = f.points().iter().filter(|(x, _)| !x.is_zero()).map(|(x, _)| x.abs()).collect();
    radii.sort();
    let Some(least) = radii.first() else { return Ok(false) };
    for j in window.indices() {
        let r = Rat::recip_int(j).min(sigma.value(j)?);
        if *least > r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Battery test of continuity at `0`: for each `rho`, some `sigma` (from the
/// battery or `rho/2`) with oscillation profile `< rho` at every index of
/// the window. Radii the sample cannot resolve are skipped.
pub fn continuity_verdict(f: &FuncSample, battery: &[PlGerm], window: &GridWindow) -> Result<ContinuityVerdict> {
    if battery.is_empty() {
        return Err(GermError::EmptyFamily);
    }
    if window.from() < f.j_from() || window.to() > f.j_to() {
        return Err(GermError::WindowMismatch(format!(
            "window [{}, {}] outside sample ball range [{}, {}]",
            window.from(),
            window.to(),
            f.j_from(),
            f.j_to()
        )));
    }
    let mut choices = Vec::new();
    let mut first_open = None;
    for (r, rho_pl) in battery.iter().enumerate() {
        let rho = Germ::Pl(rho_pl.clone());
        let window = window.with_from(window.from().max(rho.start()))?;
        let mut candidates: Vec<(SigmaChoice, Germ)> = battery
            .iter()
            .enumerate()
            .map(|(i, s)| (SigmaChoice::Battery(i), Germ::Pl(s.clone())))
            .collect();
        candidates.push((SigmaChoice::HalfRho, rho.scaled(&Rat::new(1, 2))));
        let mut found = None;
        let mut floor: Option<Rat> = None;
        for (choice, sigma) in candidates {
            let w = window.with_from(window.from().max(sigma.start()))?;
            if !resolves(f, &sigma, &w)? {
                continue;
            }
            let osc = Germ::Rat(oscillation_on(f, &sigma, &w)?);
            if require_lt_everywhere(&osc, &rho, &w)?.is_lt() {
                found = Some(choice);
                break;
            }
            let mut least = osc.value(w.from())?;
            for j in w.indices() {
                least = least.min(osc.value(j)?);
            }
            floor = Some(floor.map_or(least.clone(), |c| c.min(least)));
        }
        match (found, floor) {
            (Some(c), _) => choices.push((r, c)),
            (None, Some(c)) if c.is_positive() && c >= rho.value(window.to())? => {
                return Ok(ContinuityVerdict::DiscontinuousWitness { rho: r, floor: c });
            }
            (None, _) => {
                first_open.get_or_insert(r);
            }
        }
    }
    Ok(match first_open {
        None => ContinuityVerdict::ContinuousAtHorizon { choices },
        Some(rho) => ContinuityVerdict::Inconclusive { rho },
    })
}
