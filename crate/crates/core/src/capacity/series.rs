use alloc::vec::Vec;

use super::kernel::{check_alpha, DomainError};
use super::report::{EnergyMethod, EnergyReport};
use crate::boundary::MomentMeasure;

/// Smallest fitted decay exponent accepted as convergent.
pub const MIN_DECAY_EXPONENT: f64 = 1.02;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyOptions {
    /// Initial (or, without `adaptive`, the only) truncation.
    pub k_start: u32,
    /// Double `K` until successive estimates agree to `tol`.
    pub adaptive: bool,
    pub k_max: u32,
    pub tol: f64,
    /// Partial sums beyond this are reported as divergent.
    pub ceiling: f64,
    /// Add the geometric extrapolation of the remainder.
    pub extrapolate: bool,
}

impl Default for EnergyOptions {
    fn default() -> Self {
        Self { k_start: 1024, adaptive: true, k_max: 1 << 24, tol: 1e-10, ceiling: 1e12, extrapolate: true }
    }
}

impl EnergyOptions {
    pub fn fixed(k: u32) -> Self {
        Self { k_start: k, adaptive: false, ..Self::default() }
    }
}

fn term(alpha: f64, k: usize, mass: f64) -> f64 {
    if alpha == 2.0 {
        if k == 0 {
            mass
        } else {
            mass / k as f64
        }
    } else {
        libm::pow(k as f64 + 1.0, 1.0 - alpha) * mass
    }
}

/// Sums the series to `K` and extrapolates the remainder from the last two
/// dyadic blocks `(K/4, K/2]` and `(K/2, K]`: with block ratio `r`, the tail
/// is `B r / (1 - r)`, exact for terms decaying like a power of `k`.
fn evaluate<M: MomentMeasure + ?Sized>(mu: &M, alpha: f64, k: u32, opts: &EnergyOptions) -> EnergyReport {
    let masses = mu.degree_masses(k);
    let terms: Vec<f64> = masses.iter().enumerate().map(|(i, m)| term(alpha, i, *m)).collect();
    // Small terms first.
    let partial_sum: f64 = terms.iter().rev().sum();
    let k_us = k as usize;
    let last_block: f64 = terms[k_us / 2 + 1..].iter().rev().sum();
    let prev_block: f64 = terms[k_us / 4 + 1..=k_us / 2].iter().rev().sum();

    let mut report = EnergyReport {
        method: EnergyMethod::Series,
        alpha,
        partial_sum,
        last_term: terms[k_us].abs(),
        truncation: Some(k),
        comparable_form: alpha < 2.0,
        ..EnergyReport::default()
    };

    let mut tail = 0.0;
    if k >= 8 && last_block > 0.0 && prev_block > 0.0 {
        let r = last_block / prev_block;
        let p = 1.0 - libm::log2(r);
        report.decay_exponent = Some(p);
        if p < MIN_DECAY_EXPONENT {
            report.diverged = true;
        } else if opts.extrapolate {
            tail = last_block * r / (1.0 - r);
        }
    }
    if !partial_sum.is_finite() || partial_sum > opts.ceiling {
        report.diverged = true;
    }
    report.tail_estimate = tail;
    report.value = if report.diverged { f64::INFINITY } else { partial_sum + tail };
    report
}

/// `1 + sum_{k >= 1} A_k / k` at `alpha = 2` (for probability measures the
/// leading term `A_0` is 1), and `sum_k (k+1)^{1-alpha} A_k` for
/// `0 < alpha < 2`, flagged as a comparable form.
pub fn energy_series<M: MomentMeasure + ?Sized>(
    mu: &M,
    alpha: f64,
    opts: &EnergyOptions,
) -> Result<EnergyReport, DomainError> {
    check_alpha(alpha)?;
    let mut k = opts.k_start.max(1);
    let mut report = evaluate(mu, alpha, k, opts);
    if !opts.adaptive {
        report.converged = !report.diverged;
        return Ok(report);
    }
    loop {
        if report.diverged {
            return Ok(report);
        }
        if k >= opts.k_max {
            return Ok(report);
        }
        let next_k = k.saturating_mul(2).min(opts.k_max);
        let next = evaluate(mu, alpha, next_k, opts);
        let change = (next.value - report.value).abs();
        let done = change <= opts.tol * report.value.abs().max(1.0);
        report = next;
        k = next_k;
        if done {
            report.converged = true;
            return Ok(report);
        }
    }
}
