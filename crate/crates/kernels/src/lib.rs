//! Collision kernels.
//!
//! Angular profiles `beta(theta) = sin^{d-2}(theta) b(theta)` normalized so
//! that `int beta theta^2 = 8 (d-1) / |S^{d-2}|`, the grazing rescaling, the
//! classical and relativistic Boltzmann kernels, their modified forms after
//! Dirac reduction, and the Landau kernels.

pub mod angular;
pub mod kernel;

pub use angular::{
    angular_normalize, normalization_target, orthonormal_complement, rescale_angular,
    sphere_measure, AngularFamily, AngularProfile, AngularRule,
};
pub use kernel::{
    kernel_classical, kernel_landau, kernel_relativistic, modified_classical,
    modified_relativistic, moller_prefactor, moller_velocity, KernelSpec, SigmaFamily,
};
