use thiserror::Error;

/// Errors raised by germ construction, evaluation and the derived
/// constructions. Verdict content (a comparison that fails, a validation
/// violation) is never an error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("index {index} is before the germ start {start}")]
    IndexBeforeStart { index: u64, start: u64 },
    #[error("index {index} is beyond the sampled domain end {end}")]
    IndexBeyondDomain { index: u64, end: u64 },
    #[error("index {0} is not an anchor of the switched germ")]
    NotAnAnchor(u64),
    #[error("index arithmetic overflowed")]
    IndexOverflow,
    #[error("non-positive integer code at index {0}")]
    NonPositiveCode(u64),
    #[error("comparison is not certifiable: {0}")]
    NotCertifiable(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("germ is not strictly monotone (first violation at index {0})")]
    NotStrictlyMonotone(u64),
    #[error("division by zero at index {0}")]
    DivisionByZero(u64),
    #[error("limit to zero unverified: {0}")]
    LimitUnverified(String),
    #[error("empty family")]
    EmptyFamily,
    #[error("anchors are not decreasing points (position {0})")]
    AnchorsNotDecreasing(usize),
    #[error("too few anchors: {0} given, at least 3 required")]
    TooFewAnchors(usize),
    #[error("prefix of length {0} is too short to form 4 blocks")]
    PrefixTooShort(u64),
    #[error("net is not directed: `{0}` and `{1}` have no common upper bound")]
    NotDirected(String, String),
    #[error("window mismatch: {0}")]
    WindowMismatch(String),
    #[error("invalid window [{0}, {1}]")]
    InvalidWindow(u64, u64),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = GermError> = std::result::Result<T, E>;
