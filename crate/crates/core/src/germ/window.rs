use crate::error::{GermError, Result};

/// The grid segment `{1/j : from <= j <= to}`, the finite stand-in for
/// "all sufficiently small t".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridWindow {
    from: u64,
    to: u64,
}

impl GridWindow {
    pub fn new(from: u64, to: u64) -> Result<GridWindow> {
        if from == 0 || from > to {
            return Err(GermError::InvalidWindow(from, to));
        }
        Ok(GridWindow { from, to })
    }

    pub fn from(&self) -> u64 {
        self.from
    }

    pub fn to(&self) -> u64 {
        self.to
    }

    pub fn len(&self) -> u64 {
        self.to - self.from + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// First index of the upper half of the window. A sign pattern that is
    /// stable from this index on is reported as holding up to the horizon.
    pub fn tail_half_start(&self) -> u64 {
        self.from + self.len() / 2
    }

    pub fn contains(&self, j: u64) -> bool {
        self.from <= j && j <= self.to
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<u64> {
        self.from..=self.to
    }

    pub fn with_from(&self, from: u64) -> Result<GridWindow> {
        GridWindow::new(from, self.to)
    }
}
