use crate::error::{GermError, Result};
use crate::germ::{CodeGen, Germ, PlGerm};
use crate::DEFAULT_HORIZON;

/// `p o q`, the germ with codes `j -> K_p(K_q(j))`.
///
/// The start index is shifted to the first `j` with `K_q(j) >= start(p)`.
pub fn compose(p: &PlGerm, q: &PlGerm) -> Result<PlGerm> {
    let mut start = q.start();
    let limit = q.start() + DEFAULT_HORIZON;
    loop {
        if q.positive_code(start)? >= p.start().into() {
            break;
        }
        start += 1;
        if start > limit {
            return Err(GermError::DomainMismatch(format!(
                "inner codes stay below the outer start {} up to index {limit}",
                p.start()
            )));
        }
    }
    let q = q.restarted(start);
    let closed = match (p.closed_tail(), q.closed_tail()) {
        (Some(pa), Some(qa)) if p.head().is_empty() && q.head().is_empty() => pa.compose(qa),
        _ => None,
    };
    let out = match closed {
        Some(poly) => PlGerm::new(start, CodeGen::Closed(poly)),
        None => {
            let (outer, inner) = (p.clone(), q.clone());
            PlGerm::new(
                start,
                CodeGen::custom("composition", move |j| outer.code(inner.code_index(j)?)),
            )
        }
    };
    super::probe_strict(&Germ::Pl(out.clone()))?;
    Ok(out)
}
