use num_complex::Complex64;

use super::measure::MomentMeasure;
use crate::series::{dual_pair, Alpha, BivarPoly, MultiIndex};
use crate::special::binomial_times;

/// Cauchy transform truncated at total degree `k_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct CauchyExpansion {
    pub k_max: u32,
    pub coeffs: BivarPoly,
}

/// Coefficient of `z1^j z2^{k-j}` is `(k+1) C(k, j) conj(mu*(j, k-j))`.
pub fn cauchy_coeffs<M: MomentMeasure + ?Sized>(mu: &M, k_max: u32) -> CauchyExpansion {
    let mut coeffs = BivarPoly::zero();
    for k in 0..=k_max {
        for j in 0..=k {
            let m = mu.conj_moment(j, k - j);
            let r = m.norm();
            if r == 0.0 {
                continue;
            }
            let magnitude = binomial_times(k.into(), j.into(), r) * (k + 1) as f64;
            coeffs.add_term(MultiIndex::new(j, k - j), m * (magnitude / r));
        }
    }
    CauchyExpansion { k_max, coeffs }
}

/// Truncated `D_{-alpha}` norm of a Cauchy transform in two forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CauchyNorm {
    pub k_max: u32,
    /// `sum_{k <= K} (2 + k)^{-alpha} (k + 1) A_k`, the exact norm truncated.
    pub exact_trunc: f64,
    /// `sum_{k <= K} (k + 1)^{1 - alpha} A_k`.
    pub lemma_form_trunc: f64,
    pub last_term_exact: f64,
    pub last_term_lemma: f64,
}

/// Both truncations are assembled from the degree masses `A_k`, which keeps
/// them finite when individual coefficients would overflow.
pub fn cauchy_norm_sq<M: MomentMeasure + ?Sized>(mu: &M, alpha: Alpha, k_max: u32) -> CauchyNorm {
    let a = alpha.value();
    let masses = mu.degree_masses(k_max);
    let mut out = CauchyNorm { k_max, exact_trunc: 0.0, lemma_form_trunc: 0.0, last_term_exact: 0.0, last_term_lemma: 0.0 };
    for (k, mass) in masses.iter().enumerate() {
        let kf = k as f64;
        let exact = libm::pow(2.0 + kf, -a) * (kf + 1.0) * mass;
        let lemma = libm::pow(kf + 1.0, 1.0 - a) * mass;
        out.exact_trunc += exact;
        out.lemma_form_trunc += lemma;
        out.last_term_exact = exact;
        out.last_term_lemma = lemma;
    }
    out
}

/// Extra degrees added to the transform beyond `deg f + M`.
pub const ANNIHILATION_MARGIN: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnihilationReport {
    pub max_pairing: f64,
    /// Multiplier monomial attaining the maximum.
    pub worst: MultiIndex,
    pub k_max: u32,
}

/// `max_{a + b <= M} |<z1^a z2^b f, C[mu]>|` under the unconjugated pairing.
pub fn annihilation_check<M: MomentMeasure + ?Sized>(f: &BivarPoly, mu: &M, max_shift: u32) -> AnnihilationReport {
    let k_max = f.degree().unwrap_or(0) + max_shift + ANNIHILATION_MARGIN;
    let transform = cauchy_coeffs(mu, k_max).coeffs;
    let mut report = AnnihilationReport { max_pairing: 0.0, worst: MultiIndex::ZERO, k_max };
    for n in 0..=max_shift {
        for a in (0..=n).rev() {
            let shift = MultiIndex::new(a, n - a);
            let v: Complex64 = dual_pair(&f.shift(shift), &transform);
            if v.norm() > report.max_pairing {
                report.max_pairing = v.norm();
                report.worst = shift;
            }
        }
    }
    report
}
