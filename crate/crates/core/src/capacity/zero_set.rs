use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;

use crate::boundary::SpherePoint;

/// Boundary zero sets of the model functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroSetFamily {
    /// `{(1, 0)}`, the zero set of `1 - z1`.
    Point10,
    /// `{(1, 1) / sqrt 2}`, the zero set of `1 - (z1 + z2) / sqrt 2`.
    PointDiag,
    /// `(e^{it}, e^{-it}) / sqrt 2`, the zero set of `1 - 2 z1 z2`.
    DiagCircle,
    /// `(sin t, i cos t)`, the zero set of `1 - z1^2 + z2^2`.
    FlatCurve,
}

impl ZeroSetFamily {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "point_10" => Some(Self::Point10),
            "point_diag" => Some(Self::PointDiag),
            "diag_circle" => Some(Self::DiagCircle),
            "flat_curve" => Some(Self::FlatCurve),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Point10 => "point_10",
            Self::PointDiag => "point_diag",
            Self::DiagCircle => "diag_circle",
            Self::FlatCurve => "flat_curve",
        }
    }
}

/// Single points for the point families; otherwise `n` samples at
/// `t = 2 pi j / n`.
pub fn sample_zero_set(family: ZeroSetFamily, n: usize) -> Vec<SpherePoint> {
    let c = Complex64::new;
    match family {
        ZeroSetFamily::Point10 => alloc::vec![[c(1.0, 0.0), c(0.0, 0.0)]],
        ZeroSetFamily::PointDiag => alloc::vec![[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]],
        ZeroSetFamily::DiagCircle | ZeroSetFamily::FlatCurve => (0..n)
            .map(|j| {
                let (s, co) = libm::sincos(TAU * j as f64 / n as f64);
                if family == ZeroSetFamily::DiagCircle {
                    [c(co, s) * FRAC_1_SQRT_2, c(co, -s) * FRAC_1_SQRT_2]
                } else {
                    [c(s, 0.0), c(0.0, co)]
                }
            })
            .collect(),
    }
}
