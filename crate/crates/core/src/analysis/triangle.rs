use super::nets::{difference, NodeValue};
use super::profile::norm_profile;
use crate::error::Result;
use crate::germ::{Germ, GridWindow};
use crate::order::{arch_class_compare, ArchKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleKind {
    HoldsAtHorizon,
    Violation,
    Unresolved,
}

impl TriangleKind {
    pub fn name(self) -> &'static str {
        match self {
            TriangleKind::HoldsAtHorizon => "HOLDS_AT_HORIZON",
            TriangleKind::Violation => "VIOLATION",
            TriangleKind::Unresolved => "UNRESOLVED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleVerdict {
    pub kind: TriangleKind,
    /// Class of `Λ(f-h)` against `Λ(f-g)` and against `Λ(g-h)`.
    pub vs_fg: ArchKind,
    pub vs_gh: ArchKind,
    /// Class of `Λ(f-g)` against `Λ(g-h)`.
    pub fg_vs_gh: ArchKind,
    pub horizon: u64,
}

fn profile_of(a: &Germ, b: &Germ, window: &GridWindow) -> Result<Germ> {
    let d = difference(&NodeValue::Germ(a.clone()), &NodeValue::Germ(b.clone()), window)?;
    Ok(norm_profile(&d).germ)
}

fn at_most(k: ArchKind) -> bool {
    matches!(k, ArchKind::SameClass(_) | ArchKind::LowerClass)
}

/// Checks `class Λ(f-h) <= max(class Λ(f-g), class Λ(g-h))` on the window.
pub fn ultradist_triangle(f: &Germ, g: &Germ, h: &Germ, window: &GridWindow, n_cap: u64) -> Result<TriangleVerdict> {
    let fh = profile_of(f, h, window)?;
    let fg = profile_of(f, g, window)?;
    let gh = profile_of(g, h, window)?;
    let fg_vs_gh = arch_class_compare(&fg, &gh, window, n_cap)?.kind;
    let vs_fg = arch_class_compare(&fh, &fg, window, n_cap)?.kind;
    let vs_gh = arch_class_compare(&fh, &gh, window, n_cap)?.kind;
    // the dominant side decides when the other two are ordered
    let dominant = match fg_vs_gh {
        ArchKind::SameClass(_) | ArchKind::HigherClass => Some(vs_fg),
        ArchKind::LowerClass => Some(vs_gh),
        ArchKind::Unresolved => None,
    };
    let kind = if at_most(vs_fg) || at_most(vs_gh) {
        TriangleKind::HoldsAtHorizon
    } else if dominant == Some(ArchKind::HigherClass) && vs_fg == ArchKind::HigherClass && vs_gh == ArchKind::HigherClass {
        TriangleKind::Violation
    } else {
        TriangleKind::Unresolved
    };
    Ok(TriangleVerdict { kind, vs_fg, vs_gh, fg_vs_gh, horizon: window.to() })
}
