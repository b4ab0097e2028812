//! Factorial ratios, binomials and harmonic numbers in floating point.
//!
//! Factorials are never formed directly. Ratios are products of factors
//! that are each at most one (or each at least one), interleaved so that
//! partial products stay in range for total degrees up to about a thousand.

/// Largest `n` for which [`binomial`] is evaluated by the multiplicative
/// product. Beyond this `C(n, n/2)` leaves the `f64` range.
pub const BINOMIAL_PRODUCT_LIMIT: u64 = 1000;

/// `k! l! / (1 + k + l)!`, the squared sphere norm of `z1^k z2^l`.
///
/// Evaluated as `1/(1+k+l) * prod_{i=1}^{min} i / (max + i)`.
pub fn factorial_ratio(k: u64, l: u64) -> f64 {
    let (lo, hi) = if k <= l { (k, l) } else { (l, k) };
    let mut acc = 1.0 / (1 + k + l) as f64;
    for i in 1..=lo {
        acc *= i as f64 / (hi + i) as f64;
    }
    acc
}

/// Binomial coefficient `C(n, k)` as a float; `0` when `k > n`.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 1..=k {
        acc *= (n - k + i) as f64 / i as f64;
    }
    acc
}

/// Natural log of `C(n, k)`; `-inf` when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if n <= BINOMIAL_PRODUCT_LIMIT {
        return libm::log(binomial(n, k));
    }
    libm::lgamma((n + 1) as f64) - libm::lgamma((k + 1) as f64) - libm::lgamma((n - k + 1) as f64)
}

/// `C(n, k) * x` for `x >= 0`, staying finite when `C(n, k)` alone would
/// overflow and `x` is correspondingly small.
pub fn binomial_times(n: u64, k: u64, x: f64) -> f64 {
    if x == 0.0 || k > n {
        return 0.0;
    }
    if n <= BINOMIAL_PRODUCT_LIMIT {
        return binomial(n, k) * x;
    }
    libm::exp(ln_binomial(n, k) + libm::log(x))
}

/// `C(2m, m) / 4^m`, the central binomial probability.
pub fn central_binomial_scaled(m: u64) -> f64 {
    if 2 * m <= BINOMIAL_PRODUCT_LIMIT {
        let mut acc = 1.0;
        for i in 1..=m {
            acc *= (2 * i - 1) as f64 / (2 * i) as f64;
        }
        return acc;
    }
    libm::exp(ln_binomial(2 * m, m) - 2.0 * m as f64 * core::f64::consts::LN_2)
}

/// Harmonic number `H_n = sum_{j=1}^n 1/j`, summed from the small end.
pub fn harmonic(n: u64) -> f64 {
    (1..=n).rev().map(|j| 1.0 / j as f64).sum()
}

/// `2^e` for integer `e`, exact over the normal range.
pub fn pow2i(e: i32) -> f64 {
    libm::ldexp(1.0, e)
}

/// `2^{e/2}`; exact for even `e`.
pub fn sqrt2_pow(e: i32) -> f64 {
    let half = libm::ldexp(1.0, e.div_euclid(2));
    if e.rem_euclid(2) == 0 {
        half
    } else {
        half * core::f64::consts::SQRT_2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn small_factorial_ratios() {
        assert_eq!(factorial_ratio(0, 0), 1.0);
        assert_eq!(factorial_ratio(1, 0), 0.5);
        assert_relative_eq!(factorial_ratio(1, 1), 1.0 / 6.0, max_relative = 1e-15);
        assert_relative_eq!(factorial_ratio(2, 3), 2.0 * 6.0 / 720.0, max_relative = 1e-15);
        assert_eq!(factorial_ratio(3, 2), factorial_ratio(2, 3));
    }

    #[test]
    fn ratio_stays_positive_at_high_degree() {
        for n in [200u64, 500, 900] {
            for k in [0, 1, n / 3, n / 2] {
                assert!(factorial_ratio(k, n - k) > 0.0, "underflow at ({k}, {})", n - k);
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(5, 7), 0.0);
        assert_eq!(binomial(0, 0), 1.0);
        assert_relative_eq!(binomial(60, 30), 118264581564861424.0, max_relative = 1e-14);
        assert_relative_eq!(libm::exp(ln_binomial(2000, 3)), 2000.0 * 1999.0 * 1998.0 / 6.0, max_relative = 1e-11);
    }

    #[test]
    fn binomial_times_crosses_the_product_limit_smoothly() {
        // C(n, n/2) 2^-n is about sqrt(2/(pi n)) on both sides of the switch.
        let below = binomial_times(1000, 500, libm::ldexp(1.0, -1000));
        let above = binomial_times(1002, 501, libm::ldexp(1.0, -1002));
        assert_relative_eq!(below / above, libm::sqrt(1002.0 / 1000.0), max_relative = 1e-6);
    }

    #[test]
    fn central_binomial_matches_both_paths() {
        let m = 500;
        let product = central_binomial_scaled(m);
        let logs = libm::exp(ln_binomial(2 * m, m) - 2.0 * m as f64 * core::f64::consts::LN_2);
        assert_relative_eq!(product, logs, max_relative = 1e-11);
        assert_eq!(central_binomial_scaled(1), 0.5);
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic(0), 0.0);
        assert_relative_eq!(harmonic(3), 11.0 / 6.0, max_relative = 1e-15);
    }

    #[test]
    fn half_integer_powers_of_two() {
        assert_eq!(sqrt2_pow(4), 4.0);
        assert_eq!(sqrt2_pow(-2), 0.5);
        assert_relative_eq!(sqrt2_pow(3), 2.0 * core::f64::consts::SQRT_2, max_relative = 1e-16);
        assert_relative_eq!(sqrt2_pow(-1), core::f64::consts::FRAC_1_SQRT_2, max_relative = 1e-16);
    }
}
