//! Error type shared by every kinetica crate.

use thiserror::Error;

/// Failure modes of the collision-operator engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),
    /// A structure could not be built from the supplied parameters.
    #[error("invalid {field}: {reason}")]
    Invalid { field: &'static str, reason: String },
    /// A distribution family has a pole or sign change inside its domain.
    #[error("construction error: {0}")]
    Construction(String),
    /// A collision pair with coincident momenta, where a frame is undefined.
    #[error("singular pair: p and p* coincide")]
    SingularPair,
    /// The scattering angle is undefined for coincident momenta.
    #[error("undefined scattering angle: p and p* coincide")]
    UndefinedAngle,
    /// Quadrature rule request that cannot be honoured.
    #[error("quadrature error: {0}")]
    Quadrature(String),
    /// A non-finite value appeared inside an integrand.
    #[error("non-finite integrand at p = {p:?}, p* = {pstar:?}: {detail}")]
    Poisoned {
        p: [f64; 3],
        pstar: [f64; 3],
        detail: String,
    },
    /// The compatibility operator vanished while the dissipative side did not.
    #[error("incompatible triple: L = 0 but |R| = {0}")]
    Incompatible(f64),
    /// Explicit time step exceeds the stability bound.
    #[error("time step exceeds stability bound, suggested dt = {suggested}")]
    Cfl { suggested: f64 },
    /// A conservation or entropy monitor was violated during a run.
    #[error("monitor violation at step {step}: {detail}")]
    Monitor { step: usize, detail: String },
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Builds a [`Error::Poisoned`] from two momenta.
    pub fn poisoned(p: &crate::Vec3, pstar: &crate::Vec3, detail: impl Into<String>) -> Self {
        Error::Poisoned {
            p: [p.x, p.y, p.z],
            pstar: [pstar.x, pstar.y, pstar.z],
            detail: detail.into(),
        }
    }
}
