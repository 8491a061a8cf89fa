//! Germ order, sequence-germ triage and Archimedean classes.

mod arch;
mod compare;
mod triage;
mod verdict;

pub use arch::{arch_class_compare, ladder, ArchClassVerdict, ArchKind};
pub use compare::{canonical_eq, compare_germwise, require_lt_everywhere, CompareMode};
pub use triage::{block_bounds, frechet_triage, SignCounts, TriageKind, TriageVerdict};
pub use verdict::{OrderVerdict, VerdictKind};
