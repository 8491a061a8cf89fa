use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    /// `lhs < rhs` eventually, proved from the generator structure.
    CertifiedLt,
    /// `lhs > rhs` eventually, proved from the generator structure.
    CertifiedGt,
    /// `lhs < rhs` at every index from the witness to the horizon.
    HoldsUptoLt,
    /// `lhs > rhs` at every index from the witness to the horizon.
    HoldsUptoGt,
    /// A required strict inequality fails at the witness index.
    FailsAt,
    /// The sign keeps changing in the upper half of the window.
    Mixed,
    /// Values agree from the witness to the horizon.
    EqualFrom,
    /// Values disagree at the horizon.
    DifferThroughout,
}

impl VerdictKind {
    pub fn name(self) -> &'static str {
        match self {
            VerdictKind::CertifiedLt => "CERTIFIED_LT",
            VerdictKind::CertifiedGt => "CERTIFIED_GT",
            VerdictKind::HoldsUptoLt => "HOLDS_UPTO_LT",
            VerdictKind::HoldsUptoGt => "HOLDS_UPTO_GT",
            VerdictKind::FailsAt => "FAILS_AT",
            VerdictKind::Mixed => "MIXED",
            VerdictKind::EqualFrom => "EQUAL_FROM",
            VerdictKind::DifferThroughout => "DIFFER_THROUGHOUT",
        }
    }

    pub fn flipped(self) -> VerdictKind {
        match self {
            VerdictKind::CertifiedLt => VerdictKind::CertifiedGt,
            VerdictKind::CertifiedGt => VerdictKind::CertifiedLt,
            VerdictKind::HoldsUptoLt => VerdictKind::HoldsUptoGt,
            VerdictKind::HoldsUptoGt => VerdictKind::HoldsUptoLt,
            k => k,
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of comparing two germs, with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderVerdict {
    pub kind: VerdictKind,
    /// First index of the stable sign (or of the failure).
    pub witness_index: u64,
    pub horizon: u64,
    /// Dominance argument for certified verdicts.
    pub certificate: Option<String>,
}

impl OrderVerdict {
    pub fn new(kind: VerdictKind, witness_index: u64, horizon: u64) -> OrderVerdict {
        OrderVerdict { kind, witness_index, horizon, certificate: None }
    }

    pub fn is_lt(&self) -> bool {
        matches!(self.kind, VerdictKind::CertifiedLt | VerdictKind::HoldsUptoLt)
    }

    pub fn is_gt(&self) -> bool {
        matches!(self.kind, VerdictKind::CertifiedGt | VerdictKind::HoldsUptoGt)
    }

    pub fn is_certified(&self) -> bool {
        matches!(self.kind, VerdictKind::CertifiedLt | VerdictKind::CertifiedGt)
    }

    pub fn is_equal(&self) -> bool {
        self.kind == VerdictKind::EqualFrom
    }

    /// The verdict with the operands swapped.
    pub fn flipped(&self) -> OrderVerdict {
        OrderVerdict { kind: self.kind.flipped(), ..self.clone() }
    }
}
