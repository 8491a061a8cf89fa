use crate::error::{GermError, Result};
use crate::germ::{validate, ExpPoly, Germ, GridWindow, RatGerm, Tier};
use crate::rat::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PinchDirection {
    Lower,
    Upper,
}

/// Grid indices `j_1 < j_2 < ...` of the anchor points `r_k = 1/j_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchorSeq {
    indices: Vec<u64>,
}

impl AnchorSeq {
    pub fn from_list(indices: Vec<u64>) -> Result<AnchorSeq> {
        if let Some(pos) = indices.windows(2).position(|w| w[1] <= w[0]) {
            return Err(GermError::AnchorsNotDecreasing(pos + 1));
        }
        if indices.first() == Some(&0) {
            return Err(GermError::AnchorsNotDecreasing(0));
        }
        Ok(AnchorSeq { indices })
    }

    /// Terms `rule(1), rule(2), ...` that do not exceed `horizon`.
    pub fn from_rule(rule: &ExpPoly, horizon: u64) -> Result<AnchorSeq> {
        let mut indices = Vec::new();
        let h = num_bigint::BigInt::from(horizon);
        let mut k = 1u64;
        loop {
            let v = rule.eval(k);
            if v > h {
                break;
            }
            if v >= num_bigint::BigInt::from(1) {
                indices.push(u64::try_from(v).expect("bounded by horizon"));
            }
            k += 1;
            if k > horizon + 1 {
                break;
            }
        }
        AnchorSeq::from_list(indices)
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }
}

/// Single germ bound from bounds along anchors.
///
/// `Lower`: `u = m0(j_{k+1})` on `j_k <= j < j_{k+1}`, so any monotone `m`
/// with `m > m0` at every anchor satisfies `m > u` on `[j_1, j_n)`.
/// `Upper`: `o = m0(j_{k-1})` on `j_{k-1} < j <= j_k`, so any monotone `m`
/// with `m < m0` at every anchor satisfies `m < o` on `(j_1, j_n]`.
pub fn pinch(direction: PinchDirection, m0: &Germ, anchors: &AnchorSeq) -> Result<RatGerm> {
    let a = anchors.indices();
    if a.len() < 3 {
        return Err(GermError::TooFewAnchors(a.len()));
    }
    let (first, last) = (a[0], a[a.len() - 1]);
    let window = GridWindow::new(first.max(1), last)?;
    m0.check_window(&window)?;
    let report = validate(m0, &window);
    if report.tier.is_none() {
        return Err(GermError::Invalid(format!(
            "pinch needs a monotone m0; violation at index {}",
            report.first_violation.unwrap_or(first)
        )));
    }
    let at: Vec<Rat> = a.iter().map(|&j| m0.value(j)).collect::<Result<_>>()?;
    let mut values = Vec::with_capacity((last - first) as usize);
    let start = match direction {
        PinchDirection::Lower => {
            for k in 0..a.len() - 1 {
                for _ in a[k]..a[k + 1] {
                    values.push(at[k + 1].clone());
                }
            }
            first
        }
        PinchDirection::Upper => {
            for k in 1..a.len() {
                for _ in a[k - 1]..a[k] {
                    values.push(at[k - 1].clone());
                }
            }
            first + 1
        }
    };
    Ok(RatGerm::from_table(start, values, Tier::PseudoMonotone))
}
