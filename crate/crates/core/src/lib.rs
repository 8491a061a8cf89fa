//! Exact arithmetic on monotone function germs at 0.
//!
//! Germs live on the grid `{1/j}`. Piecewise-affine germs are coded by
//! strictly increasing integer sequences `K(j)` (value `1/K(j)` at `1/j`),
//! general monotone germs by exact rational profiles. Every statement about
//! "all sufficiently small t" is either certified from the structure of the
//! generator or reported relative to an explicit horizon.

pub mod analysis;
pub mod cli;
pub mod constructions;
pub mod dsl;
pub mod error;
pub mod germ;
pub mod order;
pub mod rat;

pub use error::{GermError, Result};
pub use germ::{eval_at, validate, Germ, GridWindow, PlGerm, RatGerm, SeqGerm, Tier};
pub use rat::Rat;

/// Default horizon for scans and CLI commands.
pub const DEFAULT_HORIZON: u64 = 10_000;
