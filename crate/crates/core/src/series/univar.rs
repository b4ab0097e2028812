use alloc::collections::BTreeMap;

use num_complex::Complex64;

/// Which one-variable space a [`UnivarPoly`] is measured in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `D_alpha` on the unit disk, weights `(k+1)^alpha`.
    DiskD,
    /// `d_alpha` on the disk of radius `1/sqrt 2`, weights `2^-k (k+1)^alpha`.
    SmallDiskd,
}

/// Sparse one-variable polynomial tagged with its space.
#[derive(Clone, Debug, PartialEq)]
pub struct UnivarPoly {
    coeffs: BTreeMap<u32, Complex64>,
    flavor: Flavor,
}

impl UnivarPoly {
    pub fn zero(flavor: Flavor) -> Self {
        Self { coeffs: BTreeMap::new(), flavor }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, Complex64)>>(flavor: Flavor, coeffs: I) -> Self {
        let mut p = Self::zero(flavor);
        for (k, c) in coeffs {
            p.add_term(k, c);
        }
        p
    }

    pub fn from_real(flavor: Flavor, coeffs: &[f64]) -> Self {
        Self::from_coeffs(flavor, coeffs.iter().enumerate().map(|(k, c)| (k as u32, Complex64::new(*c, 0.0))))
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn add_term(&mut self, k: u32, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: u32) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, Complex64)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, *c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn mul_poly(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.flavor);
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                out.add_term(i + j, a * b);
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, a) in self.terms() {
            worst = worst.max((a - other.coeff(k)).norm());
        }
        for (k, b) in other.terms() {
            if !self.coeffs.contains_key(&k) {
                worst = worst.max(b.norm());
            }
        }
        worst
    }
}
