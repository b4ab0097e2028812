//! Sparse power series in one and two variables, the `D_alpha` weights,
//! norms, and the unconjugated pairing between `D_alpha` and `D_{-alpha}`.

mod bivar;
mod index;
mod text;
mod univar;
mod weight;

use core::fmt;

pub use bivar::BivarPoly;
pub use index::MultiIndex;
pub use text::{parse_poly, ParseError, ParseErrorKind};
pub use univar::{Flavor, UnivarPoly};
pub use weight::{dual_pair, norm_sq_1var, norm_sq_2d, weight_1var, weight_2d};

/// The space parameter `alpha`.
///
/// Any finite real is accepted. Above 2 the spaces are algebras, which
/// several results treat separately; see [`Alpha::is_algebra_regime`].
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Alpha(f64);

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
#[error("alpha must be a finite real, got {0}")]
pub struct NonFiniteAlpha(pub f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self, NonFiniteAlpha> {
        if value.is_finite() {
            Ok(Self(value))
        } else {
            Err(NonFiniteAlpha(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_algebra_regime(self) -> bool {
        self.0 > 2.0
    }

    /// `alpha + delta`, used for the shifted one-variable spaces.
    pub fn shifted(self, delta: f64) -> Self {
        Self(self.0 + delta)
    }

    /// `-alpha`, the parameter of the dual space.
    pub fn dual(self) -> Self {
        Self(-self.0)
    }
}

impl TryFrom<f64> for Alpha {
    type Error = NonFiniteAlpha;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Self::new(value)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
