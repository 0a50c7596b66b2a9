//! Complete collision events for either dynamics.

use kinetica_core::{Dynamics, Error, ModelSpec, Result, Vec3};

use crate::classical::{classical_post_collision, classical_scattering_angle};
use crate::fold_angle;
use crate::lorentz::{lorentz_frame, minkowski_scattering_angle, RelativisticOutgoing};

/// A binary collision `(p, p*) -> (p', p*')` with direction `omega`.
#[derive(Debug, Clone, PartialEq)]
pub struct CollisionEvent {
    pub p: Vec3,
    pub pstar: Vec3,
    pub omega: Vec3,
    pub p_out: Vec3,
    pub pstar_out: Vec3,
    /// Raw angle in `[0, pi]`; the symmetrized angle is `fold_angle(theta_raw)`.
    pub theta_raw: f64,
    pub model: ModelSpec,
}

impl CollisionEvent {
    /// Builds the event; `omega` must be a unit vector and `p != p*`.
    pub fn new(p: Vec3, pstar: Vec3, omega: Vec3, model: ModelSpec) -> Result<Self> {
        if ((omega.norm() - 1.0).abs()) > 1e-12 {
            return Err(Error::Domain(format!(
                "collision direction must be a unit vector, |omega| = {}",
                omega.norm()
            )));
        }
        let (p_out, pstar_out, theta_raw) = match model.dynamics {
            Dynamics::Classical => {
                let (a, b) = classical_post_collision(&p, &pstar, &omega);
                (a, b, classical_scattering_angle(&p, &pstar, &omega)?)
            }
            Dynamics::Relativistic => {
                let frame = lorentz_frame(&p, &pstar, &model.constants);
                let kh = frame.k_hat.ok_or(Error::UndefinedAngle)?;
                let out = frame.outgoing(&p, &pstar, &omega);
                let theta = kh.dot(&omega).clamp(-1.0, 1.0).acos();
                (out.p, out.pstar, theta)
            }
        };
        Ok(Self {
            p,
            pstar,
            omega,
            p_out,
            pstar_out,
            theta_raw,
            model,
        })
    }

    /// Symmetrized scattering angle in `[0, pi/2]`.
    pub fn theta(&self) -> f64 {
        fold_angle(self.theta_raw)
    }

    /// Relativistic outgoing data including time components.
    pub fn relativistic_outgoing(&self) -> RelativisticOutgoing {
        RelativisticOutgoing {
            p: self.p_out,
            pstar: self.pstar_out,
            p0: self.model.p0(&self.p_out),
            p0_star: self.model.p0(&self.pstar_out),
        }
    }
}

/// Symmetrized scattering angle of an event, in `[0, pi/2]`.
///
/// Relativistic events use the Minkowski expression.
pub fn scattering_angle(event: &CollisionEvent) -> Result<f64> {
    let raw = match event.model.dynamics {
        Dynamics::Classical => classical_scattering_angle(&event.p, &event.pstar, &event.omega)?,
        Dynamics::Relativistic => {
            let out = lorentz_frame(&event.p, &event.pstar, &event.model.constants)
                .outgoing(&event.p, &event.pstar, &event.omega);
            minkowski_scattering_angle(&event.p, &event.pstar, &out, &event.model.constants)?
        }
    };
    Ok(fold_angle(raw))
}
