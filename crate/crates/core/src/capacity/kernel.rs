use crate::boundary::SpherePoint;

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum DomainError {
    #[error("kernel exponent must lie in (0, 2], got {0}")]
    Alpha(f64),
    #[error("kernel argument must be positive, got {0}")]
    Argument(f64),
}

pub(crate) fn check_alpha(alpha: f64) -> Result<(), DomainError> {
    if alpha > 0.0 && alpha <= 2.0 {
        Ok(())
    } else {
        Err(DomainError::Alpha(alpha))
    }
}

/// `h_alpha(t) = t^{alpha - 2}` for `0 < alpha < 2` and `log(e / t)` at
/// `alpha = 2`.
pub fn kernel_h(alpha: f64, t: f64) -> Result<f64, DomainError> {
    check_alpha(alpha)?;
    if !(t > 0.0) {
        return Err(DomainError::Argument(t));
    }
    Ok(kernel_unchecked(alpha, t))
}

pub(crate) fn kernel_unchecked(alpha: f64, t: f64) -> f64 {
    if alpha == 2.0 {
        1.0 - libm::log(t)
    } else {
        libm::pow(t, alpha - 2.0)
    }
}

/// `|1 - <zeta, eta>|` with `<zeta, eta> = zeta1 conj(eta1) + zeta2 conj(eta2)`.
pub fn anisotropic_distance(zeta: &SpherePoint, eta: &SpherePoint) -> f64 {
    let inner = zeta[0] * eta[0].conj() + zeta[1] * eta[1].conj();
    (num_complex::Complex64::new(1.0, 0.0) - inner).norm()
}
