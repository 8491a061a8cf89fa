//! Norm and oscillation profiles of sampled functions, continuity, nets and
//! the class ultrametric.

mod continuity;
mod nets;
mod profile;
mod sample;
mod triangle;

pub use continuity::{continuity_verdict, default_battery, ContinuityVerdict, SigmaChoice};
pub use nets::{
    converge_check, difference, nonconvergence_witness, ConvergenceReport, NetSpec, NodeValue, TestOutcome,
    TestResult,
};
pub use profile::{norm_profile, oscillation_on, oscillation_profile, NormProfile};
pub use sample::{germ_at_point, FuncSample};
pub use triangle::{ultradist_triangle, TriangleKind, TriangleVerdict};

use crate::error::Result;
use crate::germ::{Germ, GridWindow};
use crate::order::{compare_germwise, CompareMode, OrderVerdict};

/// `Λ(g) < test` germwise; membership iff the verdict is `LT`.
pub fn neighborhood_member(g: &NodeValue, test: &Germ, window: &GridWindow) -> Result<OrderVerdict> {
    let sample = match g {
        NodeValue::Germ(x) => FuncSample::from_germ(x, window)?,
        NodeValue::Sample(s) => s.with_range(window.from(), window.to())?,
    };
    let profile = norm_profile(&sample);
    compare_germwise(&profile.germ, test, window, CompareMode::Auto)
}
