//! Optimal polynomial approximants of `1/f` and their decay rates.
//!
//! For a degree budget `D`, [`dist_sq_opt`] minimizes `||p f - 1||_alpha^2`
//! over polynomials `p` of total degree at most `D` by solving the normal
//! equations of the weighted least-squares problem. [`rate_fit`] regresses
//! `log dist^2` on `log D` to compare against the predicted decay.

mod basis;
mod rate;
mod solve;

pub use basis::{enumerate_basis, BasisSpec};
pub use rate::{distance_table, phi, rate_fit, DistanceRow, DistanceTable, PhiError, RateError, RateFamily, RateFit};
pub use solve::{
    dist_sq_1var, dist_sq_opt, dist_sq_opt_with, dist_sq_weighted_1var, orthogonality_defect, ApproxError, Approximant, Approximant1,
    Precision, Reduction, SolveOptions, EXTENDED_PRECISION_DEGREE,
};
