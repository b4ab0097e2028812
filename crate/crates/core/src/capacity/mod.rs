//! Anisotropic Riesz kernels on the sphere, energies of measures, and
//! capacity estimates by minimizing energy over weights on a point cloud.

mod discrete;
mod kernel;
mod report;
mod series;
mod zero_set;

pub use discrete::{
    energy_discrete, minimize_energy, EnergyError, MinimizeOptions, MinimizedEnergy, COINCIDENT_TOLERANCE,
    DEFAULT_CUTOFF,
};
pub use kernel::{anisotropic_distance, kernel_h, DomainError};
pub use report::{EnergyMethod, EnergyReport};
pub use series::{energy_series, EnergyOptions, MIN_DECAY_EXPONENT};
pub use zero_set::{sample_zero_set, ZeroSetFamily};
