//! Operators between one- and two-variable spaces, and unitary changes of
//! variables.
//!
//! * [`extend_axis`] / [`restrict_axis`]: `g(z) -> g(z_j)` and `f -> f(z1, 0)`.
//! * [`diag_restrict`] / [`diag_lift`]: between the diagonal subspace
//!   `sum a_k (z1 z2)^k` and functions on the disk of radius `1/sqrt 2`,
//!   acting on coefficients by `c_k = 2^{-k/2} a_k` and its inverse.
//! * [`compose_unitary`]: `f -> f(U (z1, z2)^T)`.

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::series::{weight_2d, Alpha, BivarPoly, Flavor, MultiIndex, UnivarPoly};
use crate::special::{binomial, sqrt2_pow};

/// Coordinate axis of `C^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Z1,
    Z2,
}

impl TryFrom<u8> for Axis {
    type Error = u8;

    fn try_from(value: u8) -> Result<Self, u8> {
        match value {
            1 => Ok(Axis::Z1),
            2 => Ok(Axis::Z2),
            other => Err(other),
        }
    }
}

impl Axis {
    fn index(self, k: u32) -> MultiIndex {
        match self {
            Axis::Z1 => MultiIndex::new(k, 0),
            Axis::Z2 => MultiIndex::new(0, k),
        }
    }
}

/// `E_j(g)(z1, z2) = g(z_j)`.
pub fn extend_axis(g: &UnivarPoly, axis: Axis) -> BivarPoly {
    g.terms().map(|(k, c)| (axis.index(k), c)).collect()
}

/// Restriction to the coordinate disk: keeps the terms free of the other
/// variable.
pub fn restrict_axis(f: &BivarPoly, axis: Axis) -> UnivarPoly {
    let terms = f.terms().filter_map(|(i, c)| match axis {
        Axis::Z1 if i.l == 0 => Some((i.k, c)),
        Axis::Z2 if i.k == 0 => Some((i.l, c)),
        _ => None,
    });
    UnivarPoly::from_coeffs(Flavor::DiskD, terms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("input is not diagonal: term {index} has k != l")]
pub struct NonDiagonalInput {
    pub index: MultiIndex,
}

/// Diagonal restriction: `sum a_k (z1 z2)^k -> sum 2^{-k/2} a_k z^k`.
pub fn diag_restrict(f: &BivarPoly) -> Result<UnivarPoly, NonDiagonalInput> {
    let mut out = UnivarPoly::zero(Flavor::SmallDiskd);
    for (i, c) in f.terms() {
        if i.k != i.l {
            return Err(NonDiagonalInput { index: i });
        }
        out.add_term(i.k, c * sqrt2_pow(-(i.k as i32)));
    }
    Ok(out)
}

/// Diagonal lift `g(z) -> g(sqrt 2 z1 z2)`, the inverse of [`diag_restrict`].
pub fn diag_lift(g: &UnivarPoly) -> BivarPoly {
    g.terms().map(|(k, c)| (MultiIndex::new(k, k), c * sqrt2_pow(k as i32))).collect()
}

/// `s_k = 4^k sqrt(k+1) (k!)^2 / (2k+1)!`. The diagonal lift scales the
/// `d_{alpha - 1/2}` norm of `z^k` by exactly `2^alpha s_k`; `s_k` decreases
/// from 1 towards `sqrt(pi) / 2`.
pub fn diagonal_norm_ratio(k: u32) -> f64 {
    // s_j / s_{j-1} = sqrt((j+1)/j) * 2j / (2j+1), every factor in (0, 1].
    let mut acc = 1.0;
    for j in 1..=k {
        let j = f64::from(j);
        acc *= libm::sqrt((j + 1.0) / j) * (2.0 * j) / (2.0 * j + 1.0);
    }
    acc
}

/// Weight of `z^k` in the norm that [`diag_lift`] carries isometrically onto
/// the diagonal subspace of `D_alpha`: `2^k * weight_2d(alpha, (k, k))`.
pub fn lifted_diagonal_weight(alpha: Alpha, k: u32) -> f64 {
    libm::ldexp(weight_2d(alpha, MultiIndex::new(k, k)), k as i32)
}

/// Weight of `z^k` in the norm that [`extend_axis`] carries isometrically
/// into `D_alpha`: `weight_2d(alpha, (k, 0))`.
pub fn extended_axis_weight(alpha: Alpha, k: u32) -> f64 {
    weight_2d(alpha, MultiIndex::new(k, 0))
}

pub const UNITARY_TOLERANCE: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
#[error("matrix is not unitary: max |U U* - I| = {defect:e}")]
pub struct NotUnitary {
    pub defect: f64,
}

/// 2x2 unitary matrix, rows `[u11, u12]` and `[u21, u22]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unitary2 {
    m: [[Complex64; 2]; 2],
}

impl Unitary2 {
    /// Checks `U U* = I` entrywise to [`UNITARY_TOLERANCE`].
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self, NotUnitary> {
        let mut defect: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let dot = m[i][0] * m[j][0].conj() + m[i][1] * m[j][1].conj();
                let target = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((dot - target).norm());
            }
        }
        if defect <= UNITARY_TOLERANCE {
            Ok(Self { m })
        } else {
            Err(NotUnitary { defect })
        }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self { m: [[one, zero], [zero, one]] }
    }

    /// The real symmetric unitary `[[1, 1], [1, -1]] / sqrt 2`.
    pub fn hadamard() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self { m: [[h, h], [h, -h]] }
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    /// `U^{-1} = U*`.
    pub fn inverse(&self) -> Self {
        let m = self.m;
        Self { m: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]] }
    }
}

/// Coefficients of `(a z1 + b z2)^n` as a dense list indexed by the power
/// of `z1`.
fn linear_form_power(a: Complex64, b: Complex64, n: u32) -> Vec<Complex64> {
    let powers = |x: Complex64| {
        let mut p = Vec::with_capacity(n as usize + 1);
        let mut acc = Complex64::new(1.0, 0.0);
        for _ in 0..=n {
            p.push(acc);
            acc *= x;
        }
        p
    };
    let (pa, pb) = (powers(a), powers(b));
    (0..=n).map(|i| pa[i as usize] * pb[(n - i) as usize] * binomial(n as u64, i as u64)).collect()
}

/// `f(U (z1, z2)^T)`, expanded monomial by monomial with exact binomial
/// coefficients. Total degree is preserved termwise.
pub fn compose_unitary(f: &BivarPoly, u: &Unitary2) -> BivarPoly {
    let m = u.m;
    let mut out = BivarPoly::zero();
    for (idx, c) in f.terms() {
        // z1 -> u11 z1 + u12 z2, z2 -> u21 z1 + u22 z2.
        let first = linear_form_power(m[0][0], m[0][1], idx.k);
        let second = linear_form_power(m[1][0], m[1][1], idx.l);
        for (i, a) in first.iter().enumerate() {
            for (j, b) in second.iter().enumerate() {
                let (i, j) = (i as u32, j as u32);
                let target = MultiIndex::new(i + j, (idx.k - i) + (idx.l - j));
                out.add_term(target, c * a * b);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{norm_sq_1var, norm_sq_2d, parse_poly, Alpha};
    use approx::assert_relative_eq;
    use core::f64::consts::SQRT_2;

    fn poly(s: &str) -> BivarPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn extension_examples() {
        let g = UnivarPoly::from_real(Flavor::DiskD, &[1.0, -1.0]);
        assert_eq!(extend_axis(&g, Axis::Z1), poly("1 - z1"));
        let z = UnivarPoly::from_real(Flavor::DiskD, &[0.0, 1.0]);
        assert_eq!(extend_axis(&z, Axis::Z2), poly("z2"));

        let e = extend_axis(&z, Axis::Z1);
        let ratio = norm_sq_2d(&e, Alpha::new(1.0).unwrap()) / norm_sq_1var(&z, Alpha::new(0.0).unwrap());
        assert_relative_eq!(ratio, 1.5, max_relative = 1e-15);
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(restrict_axis(&poly("1 - z1 + z2"), Axis::Z1), UnivarPoly::from_real(Flavor::DiskD, &[1.0, -1.0]));
        assert!(restrict_axis(&poly("z1*z2"), Axis::Z1).is_zero());
        assert_eq!(restrict_axis(&poly("3 + z2^2 + z1"), Axis::Z2), UnivarPoly::from_real(Flavor::DiskD, &[3.0, 0.0, 1.0]));
        let g = UnivarPoly::from_real(Flavor::DiskD, &[0.5, 0.0, -2.0, 7.0]);
        assert_eq!(restrict_axis(&extend_axis(&g, Axis::Z1), Axis::Z1), g);
    }

    #[test]
    fn diagonal_ratio_is_the_norm_ratio() {
        let alpha = Alpha::new(1.0).unwrap();
        for k in [0u32, 1, 5, 50] {
            let z = UnivarPoly::from_coeffs(Flavor::SmallDiskd, [(k, Complex64::new(1.0, 0.0))]);
            let ratio = norm_sq_2d(&diag_lift(&z), alpha) / norm_sq_1var(&z, alpha.shifted(-0.5));
            assert_relative_eq!(ratio, 2.0 * diagonal_norm_ratio(k), max_relative = 1e-13);
            assert_relative_eq!(lifted_diagonal_weight(alpha, k), norm_sq_2d(&diag_lift(&z), alpha), max_relative = 1e-13);
        }
        assert_eq!(diagonal_norm_ratio(0), 1.0);
        assert_relative_eq!(diagonal_norm_ratio(1), libm::sqrt(2.0) * 4.0 / 6.0, max_relative = 1e-15);
    }

    #[test]
    fn axis_from_integer() {
        assert_eq!(Axis::try_from(2), Ok(Axis::Z2));
        assert_eq!(Axis::try_from(3), Err(3));
    }

    #[test]
    fn diagonal_restriction_examples() {
        let r = diag_restrict(&poly("1 - 2*z1*z2")).unwrap();
        assert_eq!(r.coeff(0), Complex64::new(1.0, 0.0));
        assert_relative_eq!(r.coeff(1).re, -SQRT_2, max_relative = 1e-15);
        assert_eq!(diag_restrict(&BivarPoly::one()).unwrap(), UnivarPoly::from_real(Flavor::SmallDiskd, &[1.0]));
        let sq = diag_restrict(&poly("(z1*z2)^2")).unwrap();
        assert_eq!(sq, UnivarPoly::from_real(Flavor::SmallDiskd, &[0.0, 0.0, 0.5]));
        let err = diag_restrict(&poly("1 + z1")).unwrap_err();
        assert_eq!(err.index, MultiIndex::new(1, 0));
    }

    #[test]
    fn diagonal_lift_examples() {
        let g = UnivarPoly::from_real(Flavor::SmallDiskd, &[1.0, -SQRT_2]);
        assert!(diag_lift(&g).approx_eq(&poly("1 - 2*z1*z2"), 1e-15));
        let z = UnivarPoly::from_real(Flavor::SmallDiskd, &[0.0, 1.0]);
        assert_eq!(diag_lift(&z), BivarPoly::from_real([((1, 1), SQRT_2)]));
    }

    #[test]
    fn hadamard_examples() {
        let u = Unitary2::hadamard();
        let sharp = compose_unitary(&poly("1 - z1"), &u);
        let expected = BivarPoly::from_real([((0, 0), 1.0), ((1, 0), -FRAC_1_SQRT_2), ((0, 1), -FRAC_1_SQRT_2)]);
        assert!(sharp.approx_eq(&expected, 1e-15));

        let flat = compose_unitary(&poly("1 - 2*z1*z2"), &u);
        assert!(flat.approx_eq(&poly("1 - z1^2 + z2^2"), 1e-15), "{flat}");
        assert_eq!(flat.len(), 3);

        let f = poly("1 - 3*z1^2*z2 + (2+i)*z2^4");
        assert_eq!(compose_unitary(&f, &Unitary2::identity()), f);
    }

    #[test]
    fn inverse_undoes_composition() {
        let u = Unitary2::new([
            [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)],
            [Complex64::new(0.0, 0.8), Complex64::new(0.6, 0.0)],
        ])
        .unwrap();
        let f = poly("1 - 2*z1*z2 + z1^3 - i*z2");
        let back = compose_unitary(&compose_unitary(&f, &u), &u.inverse());
        assert!(back.approx_eq(&f, 1e-14));
    }

    #[test]
    fn rejects_non_unitary() {
        let one = Complex64::new(1.0, 0.0);
        let err = Unitary2::new([[one, one], [one, -one]]).unwrap_err();
        assert!(err.defect > 0.5);
    }
}
