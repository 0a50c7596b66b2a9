//! Landau gradients, weighted projections and flux fields.

use kinetica_core::{Dynamics, Error, Mat3, ModelSpec, Result, Statistics, Vec3};
use kinetica_kernels::{moller_prefactor, KernelSpec};
use kinetica_kinematics::{
    landau_projection, landau_projection_scaled, lorentz_frame, relativistic_projection,
    relativistic_projection_boosted, relativistic_projection_scaled,
};

/// How the relativistic projection `S` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProjectionForm {
    /// Closed polynomial form in `(p, p*)`.
    #[default]
    Closed,
    /// `Lt^T (I - k k^T) Lt` through the boost.
    Boosted,
}

/// Flux vector inside the divergence of a Landau operator, with a real
/// quantum parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LandauBracket {
    Quantum(f64),
    Wave,
    Linear,
}

impl LandauBracket {
    pub fn from_statistics(statistics: Statistics) -> Self {
        match statistics {
            Statistics::Quantum { alpha } => LandauBracket::Quantum(alpha as f64),
            Statistics::Wave => LandauBracket::Wave,
            Statistics::Linear => LandauBracket::Linear,
        }
    }

    /// Quantum `f*(1+a f*) grad f - f(1+a f) grad f*`; wave
    /// `f*^2 grad f - f^2 grad f*`; linear `grad f - grad f*`.
    ///
    /// Each equals `Theta_L (grad h'(f) - grad h'(f*))` without dividing by `f`.
    #[inline]
    pub fn field(&self, f: f64, fs: f64, gf: &Vec3, gfs: &Vec3) -> Vec3 {
        match *self {
            LandauBracket::Quantum(a) => gf * (fs * (1.0 + a * fs)) - gfs * (f * (1.0 + a * f)),
            LandauBracket::Wave => gf * (fs * fs) - gfs * (f * f),
            LandauBracket::Linear => gf - gfs,
        }
    }
}

/// Landau weight `Theta_L` of the statistics.
pub fn theta_landau(f: f64, fs: f64, statistics: Statistics) -> f64 {
    match statistics {
        Statistics::Quantum { alpha } => {
            let a = alpha as f64;
            f * fs * (1.0 + a * f) * (1.0 + a * fs)
        }
        Statistics::Wave => (f * fs) * (f * fs),
        Statistics::Linear => 1.0,
    }
}

/// Kernel, projection and flux field of one pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauFlux {
    /// `sigma |p - p*|^2` or `v_c sigma^c g^2`.
    pub kernel: f64,
    /// `Pi_{(p - p*)^perp}` or `S(p, p*)`.
    pub projection: Mat3,
    pub field: Vec3,
}

impl LandauFlux {
    /// `kernel * projection * field`.
    pub fn vector(&self) -> Vec3 {
        self.projection * self.field * self.kernel
    }
}

/// Pair flux for a distribution with gradients.
pub fn landau_flux(
    f: (f64, &Vec3),
    fs: (f64, &Vec3),
    p: &Vec3,
    pstar: &Vec3,
    spec: &KernelSpec,
) -> Result<LandauFlux> {
    let model = &spec.model;
    let projection = match model.dynamics {
        Dynamics::Classical => landau_projection(p, pstar, model.d)?,
        Dynamics::Relativistic => relativistic_projection(p, pstar, &model.constants, model.d)?,
    };
    Ok(LandauFlux {
        kernel: kinetica_kernels::kernel_landau(p, pstar, spec),
        projection,
        field: LandauBracket::from_statistics(model.statistics).field(f.0, fs.0, f.1, fs.1),
    })
}

/// Division-free `kernel * projection`, which vanishes smoothly on the diagonal.
pub fn weighted_projection(p: &Vec3, pstar: &Vec3, spec: &KernelSpec, form: ProjectionForm) -> Mat3 {
    let model = &spec.model;
    match model.dynamics {
        Dynamics::Classical => {
            let u = (p - pstar).norm();
            spec.sigma.times_power(u, 0) * landau_projection_scaled(p, pstar, model.d)
        }
        Dynamics::Relativistic => {
            let k = &model.constants;
            let frame = lorentz_frame(p, pstar, k);
            let scalar = moller_prefactor(&frame, k) * spec.sigma.times_power(frame.g, 1);
            if scalar == 0.0 {
                return Mat3::zeros();
            }
            let g2s = match form {
                ProjectionForm::Closed => relativistic_projection_scaled(p, pstar, k, model.d),
                ProjectionForm::Boosted => match relativistic_projection_boosted(p, pstar, k, model.d) {
                    Ok(s) => s * (frame.g * frame.g),
                    Err(_) => Mat3::zeros(),
                },
            };
            g2s * scalar
        }
    }
}

/// Landau gradient of `phi` from its gradient field.
///
/// Classical: `Pi (grad phi(p) - grad phi(p*))`; relativistic:
/// `Pi_{k^perp} Lt (grad phi(p) - grad phi(p*))`.
pub fn landau_gradient(
    grad_phi: impl Fn(&Vec3) -> Vec3,
    p: &Vec3,
    pstar: &Vec3,
    model: &ModelSpec,
) -> Result<Vec3> {
    let diff = grad_phi(p) - grad_phi(pstar);
    match model.dynamics {
        Dynamics::Classical => Ok(landau_projection(p, pstar, model.d)? * diff),
        Dynamics::Relativistic => {
            let frame = lorentz_frame(p, pstar, &model.constants);
            let k = frame.k_hat.ok_or(Error::SingularPair)?;
            let t = frame.lambda_tilde * diff;
            Ok(t - k * k.dot(&t))
        }
    }
}

/// Fourth-order central-difference gradient of a scalar field.
pub fn central_gradient(phi: impl Fn(&Vec3) -> f64, p: &Vec3, h: f64, d: usize) -> Vec3 {
    let mut g = Vec3::zeros();
    for a in 0..d {
        let mut e = Vec3::zeros();
        e[a] = h;
        g[a] = (8.0 * (phi(&(p + e)) - phi(&(p - e))) - (phi(&(p + 2.0 * e)) - phi(&(p - 2.0 * e))))
            / (12.0 * h);
    }
    g
}
