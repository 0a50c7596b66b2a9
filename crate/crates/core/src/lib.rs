//! Shared building blocks for the kinetica collision-operator engine.
//!
//! Momenta are stored as `Vector3<f64>`; two-dimensional models keep the
//! third component at zero so every kinematic formula works unchanged.

pub mod constants;
pub mod dissipation;
pub mod distribution;
pub mod entropy;
pub mod error;
pub mod fixtures;
pub mod logmean;
pub mod model;
pub mod moments;
pub mod quadrature;

pub use constants::PhysicalConstants;
pub use dissipation::{psi_star, psi_star_prime, DissipationKind, DissipationPair};
pub use distribution::{equilibrium, Distribution, Family, GaussianComponent, GridData};
pub use entropy::{
    entropy_density, entropy_prime, entropy_prime_inverse, entropy_second, EntropyModel,
};
pub use error::{Error, Result};
pub use fixtures::{bimodal, matched_equilibrium, standard_fixtures};
pub use logmean::logarithmic_mean;
pub use model::{energy, Dynamics, ModelSpec, Statistics};
pub use moments::{moments, Moments};
pub use quadrature::{gauss_legendre, gauss_legendre_interval, node_rng, BoxRule};

/// Momentum vector; `z = 0` for two-dimensional models.
pub type Vec3 = nalgebra::Vector3<f64>;
/// 3x3 matrix acting on momenta.
pub type Mat3 = nalgebra::Matrix3<f64>;
