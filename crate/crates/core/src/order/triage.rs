//! Fréchet triage of index-set comparisons between sequence germs.

use std::cmp::Ordering;

use crate::error::{GermError, Result};
use crate::germ::SeqGerm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriageKind {
    /// `{i : r_i < s_i}` is cofinite: true in every free ultrafilter.
    AllFreeUltrafilters,
    /// The complement is cofinite: false in every free ultrafilter.
    NoFreeUltrafilter,
    /// Both the set and its complement are witnessed infinite.
    DependsOnUltrafilter,
    /// The prefix shows neither pattern.
    Unresolved,
}

impl TriageKind {
    pub fn name(self) -> &'static str {
        match self {
            TriageKind::AllFreeUltrafilters => "ALL_FREE_ULTRAFILTERS",
            TriageKind::NoFreeUltrafilter => "NO_FREE_ULTRAFILTER",
            TriageKind::DependsOnUltrafilter => "DEPENDS_ON_ULTRAFILTER",
            TriageKind::Unresolved => "UNRESOLVED",
        }
    }
}

/// Counts of prefix indices by the sign of `r_i - s_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SignCounts {
    pub less: u64,
    pub equal: u64,
    pub greater: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriageVerdict {
    pub kind: TriageKind,
    pub evidence: SignCounts,
    /// Least `c` with `r_i < s_i` for every inspected `i >= c`.
    pub cofinite_from: Option<u64>,
    pub prefix_from: u64,
    pub prefix_to: u64,
}

/// Block boundaries splitting `[from, from + len)` into four consecutive
/// blocks; block `k` is `[b[k], b[k+1])`.
pub fn block_bounds(from: u64, len: u64) -> [u64; 5] {
    let mut b = [0u64; 5];
    for (k, slot) in b.iter_mut().enumerate() {
        *slot = from + (k as u64) * len / 4;
    }
    b
}

/// Classifies `[r] < [s]` with respect to free ultrafilters from the first
/// `prefix_length` common indices.
///
/// The set `S = {i : r_i < s_i}` counts as cofinite when it contains the
/// upper half of the prefix (the last two blocks), as co-cofinite when it
/// misses that half, and as ultrafilter-dependent when both `S` and its
/// complement meet every one of the four blocks.
pub fn frechet_triage(a: &SeqGerm, b: &SeqGerm, prefix_length: u64) -> Result<TriageVerdict> {
    if prefix_length < 4 {
        return Err(GermError::PrefixTooShort(prefix_length));
    }
    let from = a.start().max(b.start());
    let to = from + prefix_length - 1;
    let mut below = Vec::with_capacity(prefix_length as usize);
    let mut evidence = SignCounts::default();
    for i in from..=to {
        match a.term(i)?.cmp(&b.term(i)?) {
            Ordering::Less => {
                evidence.less += 1;
                below.push(true);
            }
            Ordering::Equal => {
                evidence.equal += 1;
                below.push(false);
            }
            Ordering::Greater => {
                evidence.greater += 1;
                below.push(false);
            }
        }
    }

    let cofinite_from = if *below.last().unwrap() {
        let run = below.iter().rev().take_while(|x| **x).count() as u64;
        Some(to + 1 - run)
    } else {
        None
    };

    let bounds = block_bounds(from, prefix_length);
    let half = bounds[2];
    let offset = |i: u64| (i - from) as usize;
    let upper = &below[offset(half)..];
    let kind = if upper.iter().all(|x| *x) {
        TriageKind::AllFreeUltrafilters
    } else if upper.iter().all(|x| !*x) {
        TriageKind::NoFreeUltrafilter
    } else {
        let both_everywhere = (0..4).all(|k| {
            let blk = &below[offset(bounds[k])..offset(bounds[k + 1])];
            blk.iter().any(|x| *x) && blk.iter().any(|x| !*x)
        });
        if both_everywhere {
            TriageKind::DependsOnUltrafilter
        } else {
            TriageKind::Unresolved
        }
    };
    Ok(TriageVerdict {
        kind,
        evidence,
        cofinite_from,
        prefix_from: from,
        prefix_to: to,
    })
}
