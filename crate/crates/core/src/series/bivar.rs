use alloc::collections::BTreeMap;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::MultiIndex;

/// Polynomial in `z1, z2` with complex coefficients, stored sparsely.
///
/// Exactly-zero coefficients are never stored; nothing is pruned by
/// magnitude. Iteration follows the [`MultiIndex`] order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BivarPoly {
    terms: BTreeMap<MultiIndex, Complex64>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(MultiIndex::ZERO, c)
    }

    pub fn monomial(idx: MultiIndex, c: Complex64) -> Self {
        let mut p = Self::zero();
        p.add_term(idx, c);
        p
    }

    /// Builds a polynomial from real coefficients, summing repeated indices.
    pub fn from_real<I: IntoIterator<Item = ((u32, u32), f64)>>(terms: I) -> Self {
        terms
            .into_iter()
            .map(|((k, l), c)| (MultiIndex::new(k, l), Complex64::new(c, 0.0)))
            .collect()
    }

    /// Adds `c` to the coefficient at `idx`, dropping it if the sum is zero.
    pub fn add_term(&mut self, idx: MultiIndex, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.terms.entry(idx).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&idx);
        }
    }

    pub fn coeff(&self, idx: MultiIndex) -> Complex64 {
        self.terms.get(&idx).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (MultiIndex, Complex64)> + '_ {
        self.terms.iter().map(|(i, c)| (*i, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = MultiIndex> + '_ {
        self.terms.keys().copied()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|i| i.total()).max()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im == 0.0)
    }

    /// True if every term lies on the diagonal `k == l`.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|i| i.k == i.l)
    }

    /// True if no term involves `z2` (`axis == 1`) or `z1` (`axis == 2`).
    pub fn depends_only_on(&self, axis: u8) -> bool {
        match axis {
            1 => self.terms.keys().all(|i| i.l == 0),
            2 => self.terms.keys().all(|i| i.k == 0),
            _ => false,
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.terms().map(|(i, c)| (i, c * s)).collect()
    }

    /// Multiplies by `z1^shift.k z2^shift.l`.
    pub fn shift(&self, shift: MultiIndex) -> Self {
        Self { terms: self.terms.iter().map(|(i, c)| (*i + shift, *c)).collect() }
    }

    /// Coefficient convolution; the product's support lies in the
    /// Minkowski sum of the supports.
    pub fn mul_poly(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                out.add_term(i + j, a * b);
            }
        }
        out
    }

    /// Largest coefficient difference in modulus.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.terms() {
            worst = worst.max((a - other.coeff(i)).norm());
        }
        for (i, b) in other.terms() {
            if !self.terms.contains_key(&i) {
                worst = worst.max(b.norm());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }
}

impl FromIterator<(MultiIndex, Complex64)> for BivarPoly {
    fn from_iter<I: IntoIterator<Item = (MultiIndex, Complex64)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (i, c) in iter {
            p.add_term(i, c);
        }
        p
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;

    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (i, c) in rhs.terms() {
            out.add_term(i, c);
        }
        out
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;

    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (i, c) in rhs.terms() {
            out.add_term(i, -c);
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;

    fn neg(self) -> BivarPoly {
        self.terms().map(|(i, c)| (i, -c)).collect()
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;

    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        self.mul_poly(rhs)
    }
}
