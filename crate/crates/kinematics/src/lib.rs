//! Two-body collision kinematics.
//!
//! Classical collisions use the centre-of-mass parametrization
//! `p' = (p + p*)/2 + |p - p*|/2 omega`. Relativistic collisions boost into
//! the centre-of-momentum frame, rotate there and boost back.

pub mod classical;
pub mod event;
pub mod lorentz;
pub mod projection;
pub mod selftest;

pub use classical::{classical_post_collision, classical_scattering_angle};
pub use event::{scattering_angle, CollisionEvent};
pub use kinetica_core::energy;
pub use lorentz::{
    lorentz_frame, minkowski_scattering_angle, relativistic_post_collision, LorentzFrame,
    RelativisticOutgoing,
};
pub use selftest::{lorentz_audit, LorentzAudit};
pub use projection::{
    landau_projection, landau_projection_scaled, relativistic_projection,
    relativistic_projection_boosted,
    relativistic_projection_scaled,
};

/// Clamp a cosine to `[-1, 1]` before `acos`.
pub(crate) fn safe_acos(c: f64) -> f64 {
    c.clamp(-1.0, 1.0).acos()
}

/// Folds an angle in `[0, pi]` onto `[0, pi/2]`, the symmetrized range.
pub fn fold_angle(theta: f64) -> f64 {
    theta.min(std::f64::consts::PI - theta)
}
