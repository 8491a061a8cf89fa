//! Constructive procedures on germs: composition, inversion, pointwise
//! arithmetic, PL minorants, diagonal lower bounds and pinching.

mod arith;
mod compose;
mod diagonal;
mod invert;
mod minor;
mod pinch;

pub use arith::{arithmetic, open_mult_radius, radius_factorization, ArithOp, RadiusCheck};
pub use compose::compose;
pub use diagonal::{diagonal_below, Family};
pub use invert::{invert, invert_with, switch, InvertMode};
pub use minor::{minorize_to_pl, Minorant};
pub use pinch::{pinch, AnchorSeq, PinchDirection};

use crate::germ::{validate, Germ, GridWindow};

/// Width of the probe window used to re-validate constructed germs.
pub const PROBE_WIDTH: u64 = 256;

pub(crate) fn probe_window(g: &Germ) -> GridWindow {
    let from = g.start();
    let mut to = from + PROBE_WIDTH - 1;
    if let Some(end) = g.end() {
        to = to.min(end);
    }
    GridWindow::new(from, to.max(from)).expect("probe window")
}

/// Strict-monotonicity probe for a constructed PL germ.
pub(crate) fn probe_strict(g: &Germ) -> crate::Result<()> {
    let report = validate(g, &probe_window(g));
    match report.first_violation {
        Some(j) => Err(crate::GermError::NotStrictlyMonotone(j)),
        None => Ok(()),
    }
}
