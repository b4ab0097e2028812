use num_complex::Complex64;

use super::{Alpha, BivarPoly, Flavor, MultiIndex, UnivarPoly};
use crate::special::{factorial_ratio, pow2i};

/// `(2+k+l)^alpha * k! l! / (1+k+l)!`, the `D_alpha` weight of `z1^k z2^l`.
pub fn weight_2d(alpha: Alpha, idx: MultiIndex) -> f64 {
    let n = idx.total() as f64;
    libm::pow(2.0 + n, alpha.value()) * factorial_ratio(idx.k as u64, idx.l as u64)
}

/// Squared `D_alpha` norm, summed in canonical index order.
pub fn norm_sq_2d(f: &BivarPoly, alpha: Alpha) -> f64 {
    f.terms().map(|(i, c)| weight_2d(alpha, i) * c.norm_sqr()).sum()
}

/// `sum k! l! / (1+k+l)! * a_{k,l} * b_{k,l}`, with no conjugation.
pub fn dual_pair(f: &BivarPoly, g: &BivarPoly) -> Complex64 {
    // Iterate the sparser side and look up the other.
    let (small, large) = if f.len() <= g.len() { (f, g) } else { (g, f) };
    small
        .terms()
        .map(|(i, a)| a * large.coeff(i) * factorial_ratio(i.k as u64, i.l as u64))
        .sum()
}

/// Weight of `z^k` in the one-variable space selected by `flavor`.
pub fn weight_1var(flavor: Flavor, alpha: Alpha, k: u32) -> f64 {
    let base = libm::pow(k as f64 + 1.0, alpha.value());
    match flavor {
        Flavor::DiskD => base,
        Flavor::SmallDiskd => base * pow2i(-(k as i32)),
    }
}

/// Squared norm in `D_alpha` or (coefficient form of) `d_alpha`.
pub fn norm_sq_1var(g: &UnivarPoly, alpha: Alpha) -> f64 {
    g.terms().map(|(k, c)| weight_1var(g.flavor(), alpha, k) * c.norm_sqr()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn a(x: f64) -> Alpha {
        Alpha::new(x).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight_2d(a(2.0), MultiIndex::ZERO), 4.0);
        assert_eq!(weight_2d(a(0.0), MultiIndex::ZERO), 1.0);
        assert_relative_eq!(weight_2d(a(0.0), MultiIndex::new(1, 1)), 1.0 / 6.0, max_relative = 1e-15);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm_sq_2d(&BivarPoly::one(), a(1.0)), 2.0);
        let z1 = BivarPoly::from_real([((1, 0), 1.0)]);
        assert_eq!(norm_sq_2d(&z1, a(0.0)), 0.5);
        let f = BivarPoly::from_real([((0, 0), 1.0), ((1, 1), -2.0)]);
        assert_relative_eq!(norm_sq_2d(&f, a(0.0)), 5.0 / 3.0, max_relative = 1e-15);
        assert_eq!(norm_sq_2d(&BivarPoly::zero(), a(3.0)), 0.0);
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(dual_pair(&BivarPoly::one(), &BivarPoly::one()), Complex64::new(1.0, 0.0));
        let z1 = BivarPoly::from_real([((1, 0), 1.0)]);
        assert_eq!(dual_pair(&z1, &z1), Complex64::new(0.5, 0.0));
        // No conjugation on either side.
        let iz1 = z1.scale(Complex64::new(0.0, 1.0));
        assert_eq!(dual_pair(&iz1, &iz1), Complex64::new(-0.5, 0.0));
    }

    #[test]
    fn one_variable_examples() {
        let one = UnivarPoly::from_real(Flavor::DiskD, &[1.0]);
        for alpha in [-2.0, 0.0, 1.5] {
            assert_eq!(norm_sq_1var(&one, a(alpha)), 1.0);
        }
        let z = UnivarPoly::from_real(Flavor::DiskD, &[0.0, 1.0]);
        assert_eq!(norm_sq_1var(&z, a(1.0)), 2.0);
        let z_small = UnivarPoly::from_real(Flavor::SmallDiskd, &[0.0, 1.0]);
        assert_eq!(norm_sq_1var(&z_small, a(0.0)), 0.5);
    }

    fn real_poly(max_deg: u32, len: usize) -> impl Strategy<Value = BivarPoly> {
        prop::collection::vec(((0..=max_deg, 0..=max_deg), -10.0f64..10.0), 1..len)
            .prop_map(BivarPoly::from_real)
    }

    proptest! {
        #[test]
        fn weights_are_positive(alpha in -10.0f64..10.0, k in 0u32..=250, l in 0u32..=250) {
            prop_assert!(weight_2d(a(alpha), MultiIndex::new(k, l)) > 0.0);
        }

        #[test]
        fn norm_is_monotone_in_alpha(f in real_poly(30, 12), x in -10.0f64..10.0, y in -10.0f64..10.0) {
            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
            prop_assert!(norm_sq_2d(&f, a(lo)) <= norm_sq_2d(&f, a(hi)));
        }

        #[test]
        fn pairing_obeys_cauchy_schwarz(
            f in real_poly(20, 15), g in real_poly(20, 15), alpha in -4.0f64..4.0,
        ) {
            let lhs = dual_pair(&f, &g).norm();
            let rhs = libm::sqrt(norm_sq_2d(&f, a(alpha))) * libm::sqrt(norm_sq_2d(&g, a(-alpha)));
            prop_assert!(lhs <= rhs * (1.0 + 1e-12), "{lhs} > {rhs}");
        }
    }
}
