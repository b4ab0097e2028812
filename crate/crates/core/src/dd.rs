//! Double-double accumulators.
//!
//! Only what the Gram assembly and residual evaluation need: error-free
//! sums and products of `f64` values gathered into an unevaluated pair.

use core::ops::{Add, AddAssign, Neg, Sub};

use num_complex::Complex64;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact product of two doubles.
    pub fn product(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self { hi, lo }
    }

    pub fn add_f64(self, x: f64) -> Self {
        let (s, e) = two_sum(self.hi, x);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        Self { hi, lo }
    }

    /// Adds the exact product `a * b`.
    pub fn add_product(self, a: f64, b: f64) -> Self {
        self + Self::product(a, b)
    }

    pub fn mul_f64(self, x: f64) -> Self {
        let (p, e) = two_prod(self.hi, x);
        let (hi, lo) = quick_two_sum(p, e + self.lo * x);
        Self { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for DoubleDouble {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl AddAssign for DoubleDouble {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Neg for DoubleDouble {
    type Output = Self;

    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// Complex accumulator with double-double real and imaginary parts.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexDd {
    pub re: DoubleDouble,
    pub im: DoubleDouble,
}

impl ComplexDd {
    pub const ZERO: Self = Self { re: DoubleDouble::ZERO, im: DoubleDouble::ZERO };

    pub fn from_complex(z: Complex64) -> Self {
        Self { re: DoubleDouble::from_f64(z.re), im: DoubleDouble::from_f64(z.im) }
    }

    /// `self + scale * a * b` with the complex product formed exactly.
    pub fn add_scaled_product(self, scale: f64, a: Complex64, b: Complex64) -> Self {
        let ar = a.re * scale;
        let ai = a.im * scale;
        let re = self.re.add_product(ar, b.re) - DoubleDouble::product(ai, b.im);
        let im = self.im.add_product(ar, b.im).add_product(ai, b.re);
        Self { re, im }
    }

    /// `self + a * b` with the complex product formed exactly.
    pub fn add_product(self, a: Complex64, b: Complex64) -> Self {
        let re = self.re.add_product(a.re, b.re) - DoubleDouble::product(a.im, b.im);
        let im = self.im.add_product(a.re, b.im).add_product(a.im, b.re);
        Self { re, im }
    }

    pub fn sub(self, z: Complex64) -> Self {
        Self { re: self.re.add_f64(-z.re), im: self.im.add_f64(-z.im) }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}
