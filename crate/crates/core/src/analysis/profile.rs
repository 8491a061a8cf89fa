use std::collections::VecDeque;

use super::sample::FuncSample;
use crate::error::Result;
use crate::germ::{Germ, GridWindow, RatGerm, Tier};
use crate::rat::Rat;

/// The norm profile `j -> max{|f(x)| : |x| <= 1/j}` of a sample.
#[derive(Debug, Clone)]
pub struct NormProfile {
    /// `Germ::Zero` when every sample vanishes; otherwise a table on the
    /// sample's ball range (trailing zeros possible past `nonzero_upto`).
    pub germ: Germ,
    /// Largest `j` whose ball still contains a nonzero value.
    pub nonzero_upto: Option<u64>,
    pub window: GridWindow,
}

impl NormProfile {
    pub fn is_zero(&self) -> bool {
        self.germ.is_zero()
    }

    pub fn value(&self, j: u64) -> Result<Rat> {
        self.germ.value(j)
    }
}

/// Exact maxima of `|f|` over the nested balls of the sample.
pub fn norm_profile(f: &FuncSample) -> NormProfile {
    let window = f.window();
    let mut by_radius: Vec<(Rat, Rat)> = f.points().iter().map(|(x, v)| (x.abs(), v.abs())).collect();
    by_radius.sort_by(|a, b| a.0.cmp(&b.0));
    let mut values = vec![Rat::zero(); window.len() as usize];
    let mut best = Rat::zero();
    let mut next = 0;
    for j in window.indices().rev() {
        let r = Rat::recip_int(j);
        while next < by_radius.len() && by_radius[next].0 <= r {
            if by_radius[next].1 > best {
                best = by_radius[next].1.clone();
            }
            next += 1;
        }
        values[(j - window.from()) as usize] = best.clone();
    }
    let nonzero_upto = values
        .iter()
        .rposition(|v| v.is_positive())
        .map(|k| window.from() + k as u64);
    let germ = match nonzero_upto {
        None => Germ::Zero,
        Some(_) => Germ::Rat(RatGerm::from_table(window.from(), values, Tier::PseudoMonotone)),
    };
    NormProfile { germ, nonzero_upto, window }
}

/// `j -> max{|f(x) - f(y)| : |x|, |y| <= 1/j, |x - y| <= s(j)}`, with the
/// closed constraint on the sampled points.
pub fn oscillation_profile(f: &FuncSample, s: &Germ) -> Result<RatGerm> {
    let window = f.window();
    oscillation_on(f, s, &window.with_from(window.from().max(s.start()))?)
}

/// The oscillation profile restricted to `window`.
pub fn oscillation_on(f: &FuncSample, s: &Germ, window: &GridWindow) -> Result<RatGerm> {
    s.check_window(window)?;
    let mut values = Vec::with_capacity(window.len() as usize);
    for j in window.indices() {
        let width = s.value(j)?;
        let ball: Vec<&(Rat, Rat)> = f.ball(j).collect();
        values.push(max_spread(&ball, &width));
    }
    Ok(RatGerm::from_table(window.from(), values, Tier::Unclassified))
}

/// Largest `f(x) - f(y)` over pairs with `|x - y| <= width` of points sorted
/// by `x`, via monotone deques over a sliding window.
fn max_spread(points: &[&(Rat, Rat)], width: &Rat) -> Rat {
    let mut maxq: VecDeque<usize> = VecDeque::new();
    let mut minq: VecDeque<usize> = VecDeque::new();
    let mut left = 0;
    let mut best = Rat::zero();
    for (i, (x, v)) in points.iter().map(|p| (&p.0, &p.1)).enumerate() {
        while &(x - &points[left].0) > width {
            left += 1;
        }
        while maxq.back().is_some_and(|&k| &points[k].1 <= v) {
            maxq.pop_back();
        }
        maxq.push_back(i);
        while minq.back().is_some_and(|&k| &points[k].1 >= v) {
            minq.pop_back();
        }
        minq.push_back(i);
        while maxq.front().is_some_and(|&k| k < left) {
            maxq.pop_front();
        }
        while minq.front().is_some_and(|&k| k < left) {
            minq.pop_front();
        }
        let spread = &points[*maxq.front().unwrap()].1 - &points[*minq.front().unwrap()].1;
        if spread > best {
            best = spread;
        }
    }
    best
}
