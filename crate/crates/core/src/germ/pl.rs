use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;

use super::expoly::ExpPoly;
use crate::error::{GermError, Result};
use crate::rat::Rat;

pub type CodeFn = dyn Fn(u64) -> Result<BigInt> + Send + Sync;

/// Tail rule producing the integer code `K(j)`.
#[derive(Clone)]
pub enum CodeGen {
    /// Certified class: an integer exponential polynomial in `j`.
    Closed(ExpPoly),
    /// Any pure function of `j`; comparisons fall back to horizon scans.
    Custom { label: String, f: Arc<CodeFn> },
}

impl CodeGen {
    pub fn custom(label: impl Into<String>, f: impl Fn(u64) -> Result<BigInt> + Send + Sync + 'static) -> CodeGen {
        CodeGen::Custom {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    pub fn eval(&self, j: u64) -> Result<BigInt> {
        match self {
            CodeGen::Closed(p) => Ok(p.eval(j)),
            CodeGen::Custom { f, .. } => f(j),
        }
    }
}

impl fmt::Debug for CodeGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeGen::Closed(p) => write!(f, "k(j) = {p}"),
            CodeGen::Custom { label, .. } => write!(f, "<{label}>"),
        }
    }
}

/// A piecewise-affine monotone germ mapping `1/j` to `1/K(j)`.
///
/// Codes for `start <= j < start + head.len()` come from the head table,
/// later ones from the tail generator. Strict monotonicity of `K` is checked
/// by [`validate`](super::validate), not at construction.
#[derive(Clone, Debug)]
pub struct PlGerm {
    start: u64,
    head: Arc<[BigInt]>,
    tail: CodeGen,
}

impl PlGerm {
    pub fn new(start: u64, tail: CodeGen) -> PlGerm {
        PlGerm::with_head(start, Vec::new(), tail)
    }

    pub fn with_head(start: u64, head: Vec<BigInt>, tail: CodeGen) -> PlGerm {
        assert!(start >= 1, "grid indices start at 1");
        PlGerm {
            start,
            head: head.into(),
            tail,
        }
    }

    /// Start-1 germ with a certified generator.
    pub fn closed(p: ExpPoly) -> PlGerm {
        PlGerm::new(1, CodeGen::Closed(p))
    }

    pub fn identity() -> PlGerm {
        PlGerm::closed(ExpPoly::var())
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn head(&self) -> &[BigInt] {
        &self.head
    }

    pub fn tail(&self) -> &CodeGen {
        &self.tail
    }

    /// First index served by the tail generator.
    pub fn tail_start(&self) -> u64 {
        self.start + self.head.len() as u64
    }

    pub fn closed_tail(&self) -> Option<&ExpPoly> {
        match &self.tail {
            CodeGen::Closed(p) => Some(p),
            CodeGen::Custom { .. } => None,
        }
    }

    /// Same germ with a later start index.
    pub fn restarted(&self, start: u64) -> PlGerm {
        if start <= self.start {
            return self.clone();
        }
        let skip = (start - self.start) as usize;
        let head: Vec<BigInt> = self.head.iter().skip(skip).cloned().collect();
        PlGerm::with_head(start, head, self.tail.clone())
    }

    /// The integer code `K(j)`; not checked for positivity.
    pub fn code(&self, j: u64) -> Result<BigInt> {
        if j < self.start {
            return Err(GermError::IndexBeforeStart { index: j, start: self.start });
        }
        let off = j - self.start;
        if off < self.head.len() as u64 {
            Ok(self.head[off as usize].clone())
        } else {
            self.tail.eval(j)
        }
    }

    /// Positive code `K(j)`, as a machine index for composition.
    pub fn code_index(&self, j: u64) -> Result<u64> {
        let k = self.positive_code(j)?;
        u64::try_from(k).map_err(|_| GermError::IndexOverflow)
    }

    pub fn positive_code(&self, j: u64) -> Result<BigInt> {
        let k = self.code(j)?;
        if !k.is_positive() {
            return Err(GermError::NonPositiveCode(j));
        }
        Ok(k)
    }

    /// The value `1/K(j)` at grid point `1/j`.
    pub fn value(&self, j: u64) -> Result<Rat> {
        Ok(Rat::recip_int(self.positive_code(j)?))
    }
}
