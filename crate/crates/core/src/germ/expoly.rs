//! Integer exponential polynomials `sum c * j^d * b^j`, the generator class
//! for which eventual sign (and hence germ order) is decided exactly.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

/// Growth key of a monomial `j^degree * base^j`. The derived ordering
/// (base first, then degree) is the order of eventual dominance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub base: u64,
    pub degree: u32,
}

impl TermKey {
    pub const ONE: TermKey = TermKey { base: 1, degree: 0 };

    fn mul(self, other: TermKey) -> Option<TermKey> {
        Some(TermKey {
            base: self.base.checked_mul(other.base)?,
            degree: self.degree.checked_add(other.degree)?,
        })
    }

    fn eval(self, j: u64) -> BigInt {
        let mut v = BigInt::one();
        if self.degree > 0 {
            v = Pow::pow(BigInt::from(j), self.degree);
        }
        if self.base > 1 {
            v *= Pow::pow(BigInt::from(self.base), j);
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpPoly {
    terms: BTreeMap<TermKey, BigInt>,
}

const MAX_CROSSOVER_SEARCH: u64 = 200_000;

impl ExpPoly {
    pub fn zero() -> ExpPoly {
        ExpPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> ExpPoly {
        ExpPoly::monomial(c, TermKey::ONE)
    }

    /// The identity generator `j`.
    pub fn var() -> ExpPoly {
        ExpPoly::monomial(1, TermKey { base: 1, degree: 1 })
    }

    /// `b^j`.
    pub fn exp(base: u64) -> ExpPoly {
        assert!(base >= 1);
        ExpPoly::monomial(1, TermKey { base, degree: 0 })
    }

    pub fn monomial(c: impl Into<BigInt>, key: TermKey) -> ExpPoly {
        assert!(key.base >= 1);
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        ExpPoly { terms }
    }

    /// Polynomial `sum coeffs[d] * j^d`.
    pub fn poly(coeffs: &[i64]) -> ExpPoly {
        let mut p = ExpPoly::zero();
        for (d, &c) in coeffs.iter().enumerate() {
            p = p.add(&ExpPoly::monomial(c, TermKey { base: 1, degree: d as u32 }));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|k| k.base == 1)
    }

    pub fn degree(&self) -> Option<u32> {
        if self.is_polynomial() {
            self.terms.keys().map(|k| k.degree).max()
        } else {
            None
        }
    }

    /// Leading (eventually dominant) term.
    pub fn leading(&self) -> Option<(TermKey, &BigInt)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    /// `Some((a, c))` when this is `a*j + c`.
    pub fn as_linear(&self) -> Option<(BigInt, BigInt)> {
        if !self.is_polynomial() || self.degree().unwrap_or(0) > 1 {
            return None;
        }
        let a = self.coeff(TermKey { base: 1, degree: 1 });
        let c = self.coeff(TermKey::ONE);
        Some((a, c))
    }

    pub fn coeff(&self, key: TermKey) -> BigInt {
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let e = terms.entry(*k).or_default();
            *e += c;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        ExpPoly { terms }
    }

    pub fn neg(&self) -> ExpPoly {
        ExpPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &ExpPoly) -> ExpPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> ExpPoly {
        if c.is_zero() {
            return ExpPoly::zero();
        }
        ExpPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Product; `None` if a base or degree overflows.
    pub fn mul(&self, other: &ExpPoly) -> Option<ExpPoly> {
        let mut out = ExpPoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                out = out.add(&ExpPoly::monomial(ca * cb, ka.mul(*kb)?));
            }
        }
        Some(out)
    }

    pub fn pow(&self, n: u32) -> Option<ExpPoly> {
        let mut acc = ExpPoly::constant(1);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Some(acc)
    }

    /// `self(inner(j))` when the result stays in the class: always for a
    /// polynomial outer generator, and for any outer generator when `inner`
    /// is `a*j + c` with `a >= 1`, `c >= 0`.
    pub fn compose(&self, inner: &ExpPoly) -> Option<ExpPoly> {
        if self.is_polynomial() {
            let mut acc = ExpPoly::zero();
            let deg = self.degree().unwrap_or(0);
            for d in (0..=deg).rev() {
                acc = acc
                    .mul(inner)?
                    .add(&ExpPoly::constant(self.coeff(TermKey { base: 1, degree: d })));
            }
            return Some(acc);
        }
        let (a, c) = inner.as_linear()?;
        if a < BigInt::one() || c.is_negative() {
            return None;
        }
        let a = a.to_u32()?;
        let c = c.to_u32()?;
        let mut acc = ExpPoly::zero();
        for (k, coef) in &self.terms {
            // j^d b^j  ->  (a j + c)^d * b^c * (b^a)^j
            let base_a = k.base.checked_pow(a)?;
            let shift = Pow::pow(BigInt::from(k.base), c);
            let lin = inner.pow(k.degree)?;
            let term = lin
                .mul(&ExpPoly::monomial(coef * shift, TermKey { base: base_a, degree: 0 }))?;
            acc = acc.add(&term);
        }
        Some(acc)
    }

    pub fn eval(&self, j: u64) -> BigInt {
        self.terms
            .iter()
            .map(|(k, c)| c * k.eval(j))
            .fold(BigInt::zero(), |a, b| a + b)
    }

    /// Eventual sign together with an index `j*` such that the sign is
    /// constant on every `j >= j*`. `None` for the zero generator.
    ///
    /// The bound comes from the leading term `T`: every other term's ratio to
    /// `T` is nonincreasing from some explicit index on, so once the leading
    /// term outweighs the sum of the others it does so forever.
    pub fn eventual_sign(&self) -> Option<(Ordering, u64)> {
        let (lead, lead_coef) = self.leading()?;
        let sign = if lead_coef.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        let rest: Vec<(TermKey, BigInt)> = self
            .terms
            .iter()
            .filter(|(k, _)| **k != lead)
            .map(|(k, c)| (*k, c.abs()))
            .collect();
        if rest.is_empty() {
            return Some((sign, 1));
        }
        let mut start = 1u64;
        for (k, _) in &rest {
            start = start.max(ratio_monotone_from(lead, *k)?);
        }
        let lead_abs = lead_coef.abs();
        let mut j = start;
        while j < start + MAX_CROSSOVER_SEARCH {
            let lhs = &lead_abs * lead.eval(j);
            let rhs: BigInt = rest.iter().map(|(k, c)| c * k.eval(j)).sum();
            if lhs > rhs {
                return Some((sign, j));
            }
            j += 1;
        }
        None
    }
}

/// Least `j >= 1` from which `other(j) / lead(j)` is nonincreasing.
fn ratio_monotone_from(lead: TermKey, other: TermKey) -> Option<u64> {
    if other.degree <= lead.degree {
        return Some(1);
    }
    // other.base < lead.base here; need (j+1)^e * b' <= j^e * b.
    let e = other.degree - lead.degree;
    let mut j = 1u64;
    while j < MAX_CROSSOVER_SEARCH {
        let l = Pow::pow(BigInt::from(j + 1), e) * BigInt::from(other.base);
        let r = Pow::pow(BigInt::from(j), e) * BigInt::from(lead.base);
        if l <= r {
            return Some(j);
        }
        j += 1;
    }
    None
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            match k.degree {
                0 => {}
                1 => factors.push("j".to_string()),
                d => factors.push(format!("j^{d}")),
            }
            if k.base > 1 {
                factors.push(format!("{}^j", k.base));
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
