use alloc::vec::Vec;

use super::kernel::{anisotropic_distance, check_alpha, kernel_unchecked, DomainError};
use super::report::{EnergyMethod, EnergyReport};
use crate::boundary::{PointCloud, SpherePoint};

/// Distinct points with `|1 - <zeta, eta>|` at or below this are coincident.
pub const COINCIDENT_TOLERANCE: f64 = 1e-12;

/// Default truncation radius of the kernel used by [`minimize_energy`].
pub const DEFAULT_CUTOFF: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum EnergyError {
    #[error("need at least 2 points, got {points}")]
    DegenerateCloud { points: usize },
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("initial weights must be a probability vector of length {expected}")]
    BadInitialWeights { expected: usize },
}

/// `sum_{i != j} w_i w_j h_alpha(|1 - <zeta_i, zeta_j>|)`. Coincident pairs
/// make the value infinite and are counted.
pub fn energy_discrete(cloud: &PointCloud, alpha: f64) -> Result<EnergyReport, EnergyError> {
    check_alpha(alpha)?;
    let pts = cloud.points();
    let w = cloud.weights();
    if pts.len() < 2 {
        return Err(EnergyError::DegenerateCloud { points: pts.len() });
    }
    let mut coincident = 0;
    let mut total = 0.0;
    for i in 0..pts.len() {
        let mut row = 0.0;
        for j in (i + 1)..pts.len() {
            let t = anisotropic_distance(&pts[i], &pts[j]);
            if t <= COINCIDENT_TOLERANCE {
                coincident += 1;
                continue;
            }
            row += w[j] * kernel_unchecked(alpha, t);
        }
        total += 2.0 * w[i] * row;
    }
    let value = if coincident > 0 { f64::INFINITY } else { total };
    Ok(EnergyReport {
        method: EnergyMethod::Discrete,
        alpha,
        value,
        partial_sum: total,
        coincident_pairs: coincident,
        converged: coincident == 0,
        ..EnergyReport::default()
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimizeOptions {
    pub max_iters: usize,
    /// Stop once the Frank-Wolfe duality gap is at most this.
    pub gap_tol: f64,
    /// The kernel is evaluated at `max(t, cutoff)`, self-pairs included.
    pub cutoff: f64,
    /// Starting weights; uniform when absent.
    pub initial: Option<Vec<f64>>,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self { max_iters: 20_000, gap_tol: 1e-12, cutoff: DEFAULT_CUTOFF, initial: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimizedEnergy {
    pub weights: Vec<f64>,
    /// `value` is the minimized truncated energy `w^T H w`.
    pub report: EnergyReport,
    /// Off-diagonal part of `w^T H w` at the returned weights.
    pub off_diagonal: f64,
    /// `1 / value`.
    pub cap_estimate: f64,
    pub final_gap: f64,
    /// Energy after each iteration, starting with the initial weights.
    pub history: Vec<f64>,
    /// Set when the iteration cap was reached before the gap tolerance.
    pub warning: Option<&'static str>,
}

struct Quadratic {
    n: usize,
    h: Vec<f64>,
}

impl Quadratic {
    fn col(&self, j: usize) -> &[f64] {
        &self.h[j * self.n..(j + 1) * self.n]
    }

    fn mul(&self, w: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| self.col(i).iter().zip(w).map(|(a, b)| a * b).sum()).collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minimizes `w^T H w` over the probability simplex, where
/// `H_ij = h_alpha(max(|1 - <zeta_i, zeta_j>|, cutoff))` including `i = j`,
/// by away-step Frank-Wolfe with exact line search.
///
/// Keeping the truncated diagonal makes the objective a proper energy of a
/// bounded kernel, so enlarging the point set can only lower the minimum.
/// The off-diagonal part alone vanishes at every vertex of the simplex.
pub fn minimize_energy(
    points: &[SpherePoint],
    alpha: f64,
    opts: &MinimizeOptions,
) -> Result<MinimizedEnergy, EnergyError> {
    check_alpha(alpha)?;
    if !(opts.cutoff > 0.0) {
        return Err(DomainError::Argument(opts.cutoff).into());
    }
    let n = points.len();
    if n < 2 {
        return Err(EnergyError::DegenerateCloud { points: n });
    }
    let mut h = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let t = anisotropic_distance(&points[i], &points[j]).max(opts.cutoff);
            let v = kernel_unchecked(alpha, t);
            h[i * n + j] = v;
            h[j * n + i] = v;
        }
    }
    let q = Quadratic { n, h };

    let mut w = match &opts.initial {
        Some(init) => {
            let sum: f64 = init.iter().sum();
            if init.len() != n || init.iter().any(|x| !(*x >= 0.0)) || (sum - 1.0).abs() > 1e-12 {
                return Err(EnergyError::BadInitialWeights { expected: n });
            }
            init.clone()
        }
        None => alloc::vec![1.0 / n as f64; n],
    };
    let mut hw = q.mul(&w);
    let mut energy = dot(&w, &hw);
    let mut history = alloc::vec![energy];
    let mut gap = f64::INFINITY;
    let mut iterations = 0;

    while iterations < opts.max_iters {
        // Gradient is 2 H w; work with H w throughout.
        let s = argmin(&hw);
        let v = (0..n).filter(|&i| w[i] > 0.0).max_by(|&a, &b| hw[a].total_cmp(&hw[b])).unwrap_or(s);
        let fw_gap = energy - hw[s];
        let away_gap = hw[v] - energy;
        gap = 2.0 * fw_gap;
        if gap <= opts.gap_tol {
            break;
        }
        iterations += 1;

        let toward = fw_gap >= away_gap;
        let (slope, curvature, gamma_max) = if toward {
            // d = e_s - w
            (hw[s] - energy, q.col(s)[s] - 2.0 * hw[s] + energy, 1.0)
        } else {
            // d = w - e_v
            let wv = w[v];
            let gmax = if wv < 1.0 { wv / (1.0 - wv) } else { f64::INFINITY };
            (energy - hw[v], energy - 2.0 * hw[v] + q.col(v)[v], gmax)
        };
        let gamma = if curvature > 0.0 { (-slope / curvature).min(gamma_max) } else { gamma_max };
        if !(gamma > 0.0) || !gamma.is_finite() {
            break;
        }

        if toward {
            for (wi, hwi) in w.iter_mut().zip(hw.iter_mut()) {
                *wi *= 1.0 - gamma;
                *hwi *= 1.0 - gamma;
            }
            w[s] += gamma;
            for (hwi, c) in hw.iter_mut().zip(q.col(s)) {
                *hwi += gamma * c;
            }
        } else {
            for (wi, hwi) in w.iter_mut().zip(hw.iter_mut()) {
                *wi *= 1.0 + gamma;
                *hwi *= 1.0 + gamma;
            }
            w[v] -= gamma;
            if gamma == gamma_max || w[v] < 0.0 {
                w[v] = 0.0;
            }
            for (hwi, c) in hw.iter_mut().zip(q.col(v)) {
                *hwi -= gamma * c;
            }
        }

        // Refresh periodically to keep the incremental products honest.
        if iterations % 64 == 0 {
            let sum: f64 = w.iter().sum();
            w.iter_mut().for_each(|x| *x /= sum);
            hw = q.mul(&w);
        }
        let next = dot(&w, &hw);
        // Exact line search cannot increase the quadratic; clamp rounding.
        energy = next.min(energy);
        history.push(energy);
    }

    let self_part: f64 = (0..n).map(|i| w[i] * w[i] * q.col(i)[i]).sum();
    let warning = (gap > opts.gap_tol).then_some("iteration cap reached before the gap tolerance");
    let report = EnergyReport {
        method: EnergyMethod::Minimized,
        alpha,
        value: energy,
        partial_sum: energy,
        iterations: Some(iterations),
        converged: warning.is_none(),
        ..EnergyReport::default()
    };
    Ok(MinimizedEnergy {
        weights: w,
        off_diagonal: energy - self_part,
        cap_estimate: 1.0 / energy,
        final_gap: gap,
        history,
        report,
        warning,
    })
}

fn argmin(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if *x < v[best] {
            best = i;
        }
    }
    best
}
