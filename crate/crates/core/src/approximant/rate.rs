use alloc::vec::Vec;

use super::basis::BasisSpec;
use super::solve::{dist_sq_opt, ApproxError};
use crate::series::{Alpha, BivarPoly};
use crate::special::harmonic;

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
#[error("phi is defined for exponents in [0, 1], got {0}")]
pub struct PhiError(pub f64);

/// `phi_beta(n) = n^{1 - beta}` for `beta` in `[0, 1)`, and the harmonic
/// number `H_n` at `beta = 1`.
pub fn phi(beta: f64, n: u64) -> Result<f64, PhiError> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(PhiError(beta));
    }
    if beta == 1.0 {
        Ok(harmonic(n))
    } else {
        Ok(libm::pow(n as f64, 1.0 - beta))
    }
}

/// Shape of `f`, which fixes the one-variable exponent of the predicted rate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RateFamily {
    /// `f` depends on one coordinate only: `phi_{alpha - 1}`.
    Axis,
    /// `f` is a function of `z1 z2`: `phi_{alpha - 1/2}`.
    Diagonal,
}

impl RateFamily {
    /// Axis if `f` involves one variable, diagonal if every term has `k = l`.
    /// Constants count as axis.
    pub fn classify(f: &BivarPoly) -> Option<Self> {
        if f.depends_only_on(1) || f.depends_only_on(2) {
            Some(RateFamily::Axis)
        } else if f.is_diagonal() {
            Some(RateFamily::Diagonal)
        } else {
            None
        }
    }

    pub fn exponent(self, alpha: Alpha) -> f64 {
        match self {
            RateFamily::Axis => alpha.value() - 1.0,
            RateFamily::Diagonal => alpha.value() - 0.5,
        }
    }

    /// `1 / phi(n + 1)` with `n = floor(D / 2)`; constants are not predicted.
    pub fn prediction(self, alpha: Alpha, max_degree: u32) -> Result<f64, PhiError> {
        let n = u64::from(max_degree / 2);
        phi(self.exponent(alpha), n + 1).map(|p| 1.0 / p)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceRow {
    pub max_degree: u32,
    pub dist_sq: f64,
    pub cond_estimate: f64,
    pub p_star: BivarPoly,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DistanceTable {
    pub rows: Vec<DistanceRow>,
}

impl DistanceTable {
    pub fn new(mut rows: Vec<DistanceRow>) -> Self {
        rows.sort_by_key(|r| r.max_degree);
        Self { rows }
    }

    /// Largest increase of `dist_sq` between consecutive rows (0 if none).
    pub fn max_increase(&self) -> f64 {
        self.rows.windows(2).map(|w| w[1].dist_sq - w[0].dist_sq).fold(0.0, f64::max)
    }
}

/// Solves every degree in `degrees` independently.
pub fn distance_table(
    f: &BivarPoly,
    alpha: Alpha,
    degrees: impl IntoIterator<Item = u32>,
) -> Result<DistanceTable, ApproxError> {
    let mut rows = Vec::new();
    for d in degrees {
        let r = dist_sq_opt(f, alpha, BasisSpec::new(d))?;
        rows.push(DistanceRow { max_degree: d, dist_sq: r.dist_sq, cond_estimate: r.cond_estimate, p_star: r.p_star });
    }
    Ok(DistanceTable::new(rows))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub points: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RateError {
    #[error("rate fit needs at least 4 rows with positive dist_sq in the window, found {found}")]
    InsufficientData { found: usize },
}

/// Least-squares line through `(log D, log dist_sq)` for rows with
/// `window.0 <= D <= window.1`.
pub fn rate_fit(table: &DistanceTable, window: (u32, u32)) -> Result<RateFit, RateError> {
    let rows: Vec<&DistanceRow> =
        table.rows.iter().filter(|r| (window.0..=window.1).contains(&r.max_degree)).collect();
    let usable = rows.iter().all(|r| r.dist_sq > 0.0 && r.max_degree > 0);
    if rows.len() < 4 || !usable {
        let found = rows.iter().filter(|r| r.dist_sq > 0.0 && r.max_degree > 0).count();
        return Err(RateError::InsufficientData { found });
    }
    let xs: Vec<f64> = rows.iter().map(|r| libm::log(r.max_degree as f64)).collect();
    let ys: Vec<f64> = rows.iter().map(|r| libm::log(r.dist_sq)).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let r2 = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    Ok(RateFit { slope, intercept: my - slope * mx, r2, points: rows.len() })
}
