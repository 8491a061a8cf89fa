use std::cmp::Ordering;

use crate::error::{GermError, Result};
use crate::germ::{Germ, GridWindow};
use crate::rat::Rat;

/// Exact samples of a function `(R, 0) -> (R, 0)` on finitely many points
/// of `[-1, 1]`, together with the range of ball indices `j` (balls of
/// radius `1/j`) it is meant to resolve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuncSample {
    points: Vec<(Rat, Rat)>,
    j_from: u64,
    j_to: u64,
    symmetric: bool,
}

impl FuncSample {
    /// Samples `f` at `0` and `±1/j` for `j_from <= j <= j_to`.
    pub fn symmetric_grid(j_from: u64, j_to: u64, f: impl Fn(&Rat) -> Rat) -> Result<FuncSample> {
        let w = GridWindow::new(j_from, j_to)?;
        let mut pts = Vec::with_capacity(2 * w.len() as usize + 1);
        for j in w.indices() {
            let x = Rat::recip_int(j);
            pts.push((-&x, f(&-&x)));
            pts.push((x.clone(), f(&x)));
        }
        pts.push((Rat::zero(), Rat::zero()));
        FuncSample::from_points(pts, j_from, j_to)
    }

    /// Arbitrary finite point set; must contain `(0, 0)`.
    pub fn from_points(mut points: Vec<(Rat, Rat)>, j_from: u64, j_to: u64) -> Result<FuncSample> {
        GridWindow::new(j_from, j_to)?;
        points.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = points.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(GermError::Invalid(format!("duplicate sample point x = {}", w[0].0)));
        }
        if let Some((x, _)) = points.iter().find(|(x, _)| x.abs() > Rat::one()) {
            return Err(GermError::Invalid(format!("sample point x = {x} outside [-1, 1]")));
        }
        match points.iter().find(|(x, _)| x.is_zero()) {
            Some((_, v)) if v.is_zero() => {}
            Some((_, v)) => return Err(GermError::Invalid(format!("sample at 0 must be 0, got {v}"))),
            None => return Err(GermError::Invalid("sample set must contain x = 0".into())),
        }
        let symmetric = points
            .iter()
            .all(|(x, _)| points.binary_search_by(|p| p.0.cmp(&-x)).is_ok());
        Ok(FuncSample { points, j_from, j_to, symmetric })
    }

    /// The germ as the even function `±1/i -> g(i)` on the window grid.
    pub fn from_germ(g: &Germ, window: &GridWindow) -> Result<FuncSample> {
        g.check_window(window)?;
        let mut pts = Vec::with_capacity(2 * window.len() as usize + 1);
        for i in window.indices() {
            let v = g.value(i)?;
            let x = Rat::recip_int(i);
            pts.push((-&x, v.clone()));
            pts.push((x, v));
        }
        pts.push((Rat::zero(), Rat::zero()));
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(FuncSample {
            points: pts,
            j_from: window.from(),
            j_to: window.to(),
            symmetric: true,
        })
    }

    pub fn points(&self) -> &[(Rat, Rat)] {
        &self.points
    }

    pub fn j_from(&self) -> u64 {
        self.j_from
    }

    pub fn j_to(&self) -> u64 {
        self.j_to
    }

    pub fn window(&self) -> GridWindow {
        GridWindow::new(self.j_from, self.j_to).expect("validated at construction")
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_identically_zero(&self) -> bool {
        self.points.iter().all(|(_, v)| v.is_zero())
    }

    /// Pointwise combination on the common sample points.
    pub fn zip_with(&self, other: &FuncSample, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<FuncSample> {
        let j_from = self.j_from.max(other.j_from);
        let j_to = self.j_to.min(other.j_to);
        if j_from > j_to {
            return Err(GermError::WindowMismatch(format!(
                "ball ranges [{}, {}] and [{}, {}] are disjoint",
                self.j_from, self.j_to, other.j_from, other.j_to
            )));
        }
        let (mut i, mut k) = (0, 0);
        let mut pts = Vec::new();
        while i < self.points.len() && k < other.points.len() {
            let (xa, va) = &self.points[i];
            let (xb, vb) = &other.points[k];
            match xa.cmp(xb) {
                Ordering::Less => i += 1,
                Ordering::Greater => k += 1,
                Ordering::Equal => {
                    pts.push((xa.clone(), f(va, vb)));
                    i += 1;
                    k += 1;
                }
            }
        }
        FuncSample::from_points(pts, j_from, j_to)
    }

    pub fn sub(&self, other: &FuncSample) -> Result<FuncSample> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &FuncSample) -> Result<FuncSample> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &FuncSample) -> Result<FuncSample> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Same points, new ball range.
    pub fn with_range(&self, j_from: u64, j_to: u64) -> Result<FuncSample> {
        GridWindow::new(j_from, j_to)?;
        Ok(FuncSample { j_from, j_to, ..self.clone() })
    }

    /// `f(x) - g(x)` at every sample point, reading the germ as the even
    /// function `±1/i -> g(i)`. Sample points off the grid are an error.
    pub fn sub_germ(&self, g: &Germ) -> Result<FuncSample> {
        let mut pts = Vec::with_capacity(self.points.len());
        for (x, v) in &self.points {
            pts.push((x.clone(), v - germ_at_point(g, x)?));
        }
        FuncSample::from_points(pts, self.j_from, self.j_to)
    }

    /// Pointwise difference on identical point sets.
    pub fn sub_exact(&self, other: &FuncSample) -> Result<FuncSample> {
        let same = self.points.len() == other.points.len()
            && self.points.iter().zip(&other.points).all(|(a, b)| a.0 == b.0);
        if !same {
            return Err(GermError::WindowMismatch("samples are taken on different point sets".into()));
        }
        self.sub(other)
    }

    /// Points with `|x| <= 1/j`, in increasing `x`.
    pub fn ball(&self, j: u64) -> impl Iterator<Item = &(Rat, Rat)> {
        let r = Rat::recip_int(j);
        self.points.iter().filter(move |(x, _)| x.abs() <= r)
    }
}

/// The germ read as an even function at `x`, which must be `0` or `±1/i`.
pub fn germ_at_point(g: &Germ, x: &Rat) -> Result<Rat> {
    if x.is_zero() {
        return Ok(Rat::zero());
    }
    let r = x.abs().recip().expect("nonzero");
    if !r.is_integer() {
        return Err(GermError::WindowMismatch(format!("sample point {x} is not on the grid 1/j")));
    }
    let i: u64 = r
        .numer()
        .try_into()
        .map_err(|_| GermError::IndexOverflow)?;
    g.value(i)
}
