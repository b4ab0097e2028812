//! Measures on the unit sphere of `C^2`, their Cauchy transforms, and the
//! dual pairing checks that certify annihilation of `[f]`.
//!
//! The Cauchy transform of `mu` has the expansion
//! `C[mu](z) = sum_k (k+1) sum_j C(k, j) conj(mu*(j, k-j)) z1^j z2^{k-j}`,
//! so everything here only needs moments. The diagonal circle measure is
//! the uniform probability measure on `{(e^{it}, e^{-it}) / sqrt 2}`.

mod cauchy;
mod measure;

pub use cauchy::{
    annihilation_check, cauchy_coeffs, cauchy_norm_sq, AnnihilationReport, CauchyExpansion, CauchyNorm,
    ANNIHILATION_MARGIN,
};
pub use measure::{
    diag_circle_quadrature, Measure, MeasureError, MomentMeasure, PointCloud, SpherePoint, SPHERE_TOLERANCE,
};
