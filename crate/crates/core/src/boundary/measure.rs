use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;

use crate::special::{binomial_times, central_binomial_scaled};

/// Tolerance on `|z1|^2 + |z2|^2 = 1` and on the total weight.
pub const SPHERE_TOLERANCE: f64 = 1e-12;

/// A point of the unit sphere in `C^2`.
pub type SpherePoint = [Complex64; 2];

/// A measure on the sphere, known through its moments
/// `mu*(m, n) = int zeta1^m zeta2^n dmu`.
pub trait MomentMeasure {
    fn moment(&self, m: u32, n: u32) -> Complex64;

    /// Moment of the conjugate measure, `conj(mu*(m, n))` for real measures.
    fn conj_moment(&self, m: u32, n: u32) -> Complex64 {
        self.moment(m, n).conj()
    }

    /// `A_k = sum_j C(k, j) |mu*(j, k - j)|^2`.
    fn degree_mass(&self, k: u32) -> f64 {
        (0..=k).map(|j| binomial_times(k.into(), j.into(), self.moment(j, k - j).norm_sqr())).sum()
    }

    /// `A_0, ..., A_K`.
    fn degree_masses(&self, k_max: u32) -> Vec<f64> {
        (0..=k_max).map(|k| self.degree_mass(k)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum MeasureError {
    #[error("point {index} is off the sphere: |z1|^2 + |z2|^2 = {norm_sq}")]
    OffSphere { index: usize, norm_sq: f64 },
    #[error("weight {index} is negative or not finite: {weight}")]
    BadWeight { index: usize, weight: f64 },
    #[error("weights sum to {sum}, expected 1")]
    WeightSum { sum: f64 },
    #[error("{points} points but {weights} weights")]
    LengthMismatch { points: usize, weights: usize },
    #[error("point cloud is empty")]
    Empty,
}

fn check_on_sphere(index: usize, p: &SpherePoint) -> Result<(), MeasureError> {
    let norm_sq = p[0].norm_sqr() + p[1].norm_sqr();
    if (norm_sq - 1.0).abs() <= SPHERE_TOLERANCE {
        Ok(())
    } else {
        Err(MeasureError::OffSphere { index, norm_sq })
    }
}

/// Finitely many weighted points on the sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    points: Vec<SpherePoint>,
    weights: Vec<f64>,
}

impl PointCloud {
    pub fn new(points: Vec<SpherePoint>, weights: Vec<f64>) -> Result<Self, MeasureError> {
        if points.len() != weights.len() {
            return Err(MeasureError::LengthMismatch { points: points.len(), weights: weights.len() });
        }
        if points.is_empty() {
            return Err(MeasureError::Empty);
        }
        for (i, p) in points.iter().enumerate() {
            check_on_sphere(i, p)?;
        }
        for (index, &weight) in weights.iter().enumerate() {
            if !(weight >= 0.0 && weight.is_finite()) {
                return Err(MeasureError::BadWeight { index, weight });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > SPHERE_TOLERANCE {
            return Err(MeasureError::WeightSum { sum });
        }
        Ok(Self { points, weights })
    }

    /// Equal weights `1/N`.
    pub fn uniform(points: Vec<SpherePoint>) -> Result<Self, MeasureError> {
        let n = points.len();
        Self::new(points, alloc::vec![1.0 / n.max(1) as f64; n])
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn powers(z: Complex64, n: u32) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..=n {
        out.push(acc);
        acc *= z;
    }
    out
}

impl MomentMeasure for PointCloud {
    fn moment(&self, m: u32, n: u32) -> Complex64 {
        self.points.iter().zip(&self.weights).map(|(p, w)| p[0].powu(m) * p[1].powu(n) * *w).sum()
    }

    fn degree_masses(&self, k_max: u32) -> Vec<f64> {
        let tables: Vec<(Vec<Complex64>, Vec<Complex64>)> =
            self.points.iter().map(|p| (powers(p[0], k_max), powers(p[1], k_max))).collect();
        (0..=k_max)
            .map(|k| {
                (0..=k)
                    .map(|j| {
                        let m: Complex64 = tables
                            .iter()
                            .zip(&self.weights)
                            .map(|((a, b), w)| a[j as usize] * b[(k - j) as usize] * *w)
                            .sum();
                        binomial_times(k.into(), j.into(), m.norm_sqr())
                    })
                    .sum()
            })
            .collect()
    }
}

/// Built-in measures.
#[derive(Clone, Debug, PartialEq)]
pub enum Measure {
    /// Unit point mass at a point of the sphere.
    PointMass(SpherePoint),
    /// Normalized arc length on `{(e^{it}, e^{-it}) / sqrt 2}`.
    DiagCircle,
    /// Normalized surface measure.
    UniformSphere,
    PointCloud(PointCloud),
}

impl Measure {
    pub fn point_mass(zeta: SpherePoint) -> Result<Self, MeasureError> {
        check_on_sphere(0, &zeta)?;
        Ok(Measure::PointMass(zeta))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Measure::PointMass(_) => "point",
            Measure::DiagCircle => "diag_circle",
            Measure::UniformSphere => "sphere",
            Measure::PointCloud(_) => "cloud",
        }
    }
}

impl MomentMeasure for Measure {
    fn moment(&self, m: u32, n: u32) -> Complex64 {
        match self {
            Measure::PointMass(z) => z[0].powu(m) * z[1].powu(n),
            Measure::DiagCircle => {
                if m == n {
                    Complex64::new(libm::ldexp(1.0, -(m as i32)), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            Measure::UniformSphere => {
                let v = if m == 0 && n == 0 { 1.0 } else { 0.0 };
                Complex64::new(v, 0.0)
            }
            Measure::PointCloud(c) => c.moment(m, n),
        }
    }

    fn degree_mass(&self, k: u32) -> f64 {
        match self {
            Measure::PointMass(z) => libm::pow(z[0].norm_sqr() + z[1].norm_sqr(), k as f64),
            Measure::DiagCircle => {
                if k % 2 == 0 {
                    central_binomial_scaled(u64::from(k / 2))
                } else {
                    0.0
                }
            }
            Measure::UniformSphere => {
                if k == 0 {
                    1.0
                } else {
                    0.0
                }
            }
            Measure::PointCloud(c) => c.degree_mass(k),
        }
    }

    fn degree_masses(&self, k_max: u32) -> Vec<f64> {
        match self {
            Measure::DiagCircle => {
                let mut out = Vec::with_capacity(k_max as usize + 1);
                let mut central = 1.0;
                for k in 0..=k_max {
                    if k % 2 == 0 {
                        let m = k / 2;
                        if m > 0 {
                            central *= (2 * m - 1) as f64 / (2 * m) as f64;
                        }
                        out.push(central);
                    } else {
                        out.push(0.0);
                    }
                }
                out
            }
            Measure::PointCloud(c) => c.degree_masses(k_max),
            _ => (0..=k_max).map(|k| self.degree_mass(k)).collect(),
        }
    }
}

/// `N` equispaced nodes of the diagonal circle with weights `1/N`; its
/// moments agree with [`Measure::DiagCircle`] whenever `|m - n| < N`.
pub fn diag_circle_quadrature(n: usize) -> Result<PointCloud, MeasureError> {
    let points = (0..n)
        .map(|j| {
            let theta = TAU * j as f64 / n as f64;
            let (s, c) = libm::sincos(theta);
            [Complex64::new(c, s) * FRAC_1_SQRT_2, Complex64::new(c, -s) * FRAC_1_SQRT_2]
        })
        .collect();
    PointCloud::uniform(points)
}
