//! Archimedean classes of positive germs: the value map behind the
//! generalized ultrametric.

use super::compare::{compare_germwise, CompareMode};
use crate::error::{GermError, Result};
use crate::germ::{Germ, GridWindow};
use crate::rat::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArchKind {
    /// `a < n*b` and `b < n*a` with the least such ladder value `n`.
    SameClass(u64),
    /// `n*a < b` for every ladder value `n`.
    LowerClass,
    /// `n*b < a` for every ladder value `n`.
    HigherClass,
    Unresolved,
}

impl ArchKind {
    pub fn name(&self) -> String {
        match self {
            ArchKind::SameClass(n) => format!("SAME_CLASS({n})"),
            ArchKind::LowerClass => "LOWER_CLASS".into(),
            ArchKind::HigherClass => "HIGHER_CLASS".into(),
            ArchKind::Unresolved => "UNRESOLVED".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArchClassVerdict {
    pub kind: ArchKind,
    pub n_cap: u64,
    pub horizon: u64,
}

/// The doubling ladder `1, 2, 4, ...` up to `n_cap`.
pub fn ladder(n_cap: u64) -> impl Iterator<Item = u64> {
    std::iter::successors(Some(1u64), |n| n.checked_mul(2)).take_while(move |n| *n <= n_cap)
}

fn lt(a: &Germ, b: &Germ, window: &GridWindow) -> Result<bool> {
    Ok(compare_germwise(a, b, window, CompareMode::Auto)?.is_lt())
}

/// Compares the Archimedean classes of `a` and `b` on `window`.
pub fn arch_class_compare(a: &Germ, b: &Germ, window: &GridWindow, n_cap: u64) -> Result<ArchClassVerdict> {
    if n_cap < 2 {
        return Err(GermError::Invalid(format!("class ladder cap must be at least 2, got {n_cap}")));
    }
    a.check_window(window)?;
    b.check_window(window)?;
    let verdict = |kind| ArchClassVerdict { kind, n_cap, horizon: window.to() };
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Ok(verdict(ArchKind::SameClass(1))),
        (true, false) => return Ok(verdict(ArchKind::LowerClass)),
        (false, true) => return Ok(verdict(ArchKind::HigherClass)),
        _ => {}
    }
    for n in ladder(n_cap) {
        let q = Rat::from_int(n);
        if lt(a, &b.scaled(&q), window)? && lt(b, &a.scaled(&q), window)? {
            return Ok(verdict(ArchKind::SameClass(n)));
        }
    }
    let mut lower = true;
    let mut higher = true;
    for n in ladder(n_cap) {
        let q = Rat::from_int(n);
        if lower && !lt(&a.scaled(&q), b, window)? {
            lower = false;
        }
        if higher && !lt(&b.scaled(&q), a, window)? {
            higher = false;
        }
        if !lower && !higher {
            break;
        }
    }
    Ok(verdict(if lower {
        ArchKind::LowerClass
    } else if higher {
        ArchKind::HigherClass
    } else {
        ArchKind::Unresolved
    }))
}
