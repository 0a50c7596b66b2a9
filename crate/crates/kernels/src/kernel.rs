//! Cross sections, Boltzmann kernels, reduction factors and Landau kernels.

use kinetica_core::{Dynamics, Error, ModelSpec, PhysicalConstants, Result, Vec3};
use kinetica_kinematics::{classical_scattering_angle, lorentz_frame, LorentzFrame};

use crate::angular::AngularProfile;

/// Cross section as a function of `|p - p*|` or `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SigmaFamily {
    Constant { sigma0: f64 },
    /// `sigma0 r^gamma`.
    PowerLaw { sigma0: f64, gamma: f64 },
}

impl Default for SigmaFamily {
    fn default() -> Self {
        SigmaFamily::Constant { sigma0: 1.0 }
    }
}

impl SigmaFamily {
    fn parts(&self) -> (f64, f64) {
        match *self {
            SigmaFamily::Constant { sigma0 } => (sigma0, 0.0),
            SigmaFamily::PowerLaw { sigma0, gamma } => (sigma0, gamma),
        }
    }

    /// `sigma(r)`.
    pub fn eval(&self, r: f64) -> f64 {
        self.times_power(r, 0)
    }

    /// `r^k sigma(r)` evaluated as one power, so `0 * inf` never arises.
    ///
    /// A singular product at `r = 0` returns 0: the diagonal `p = p*` is a
    /// null set that every consumer excludes.
    pub fn times_power(&self, r: f64, k: i32) -> f64 {
        let (s0, gamma) = self.parts();
        let e = gamma + k as f64;
        if e == 0.0 {
            return s0;
        }
        if r == 0.0 {
            return 0.0;
        }
        s0 * r.powf(e)
    }

    /// Relativistic partner `m sigma(g) / (2 g)` with the same classical limit.
    pub fn newtonian_partner(&self, m: f64) -> SigmaFamily {
        let (s0, gamma) = self.parts();
        SigmaFamily::PowerLaw {
            sigma0: 0.5 * m * s0,
            gamma: gamma - 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (s0, gamma) = self.parts();
        if !(s0 >= 0.0 && s0.is_finite() && gamma.is_finite()) {
            return Err(Error::Invalid {
                field: "sigma",
                reason: format!("need sigma0 >= 0 and finite exponent, got ({s0}, {gamma})"),
            });
        }
        Ok(())
    }
}

/// Cross section, angular profile and model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub sigma: SigmaFamily,
    pub angular: AngularProfile,
    pub model: ModelSpec,
}

impl KernelSpec {
    pub fn new(sigma: SigmaFamily, angular: AngularProfile, model: ModelSpec) -> Result<Self> {
        sigma.validate()?;
        if angular.d != model.d {
            return Err(Error::Invalid {
                field: "angular.d",
                reason: format!("profile dimension {} differs from model {}", angular.d, model.d),
            });
        }
        Ok(Self {
            sigma,
            angular,
            model,
        })
    }

    /// Default power-law angular profile with a unit classical cross section;
    /// relativistic models use its Newtonian partner `m / (2 g)`, which keeps
    /// `v_c sigma^c` smooth at `g = 0`.
    pub fn default_for(model: ModelSpec) -> Result<Self> {
        let sigma = match model.dynamics {
            Dynamics::Classical => SigmaFamily::default(),
            Dynamics::Relativistic => SigmaFamily::default().newtonian_partner(model.constants.m),
        };
        Self::new(sigma, AngularProfile::default_for(model.d)?, model)
    }

    pub fn with_angular(mut self, angular: AngularProfile) -> Self {
        self.angular = angular;
        self
    }

    pub fn with_model(mut self, model: ModelSpec) -> Self {
        self.model = model;
        self
    }

    /// Kinetic weight multiplying `b d omega` for the pair.
    ///
    /// Classical: `sigma(|p - p*|)`. Relativistic: `v_c sigma^c(g)`.
    pub fn pair_weight(&self, p: &Vec3, pstar: &Vec3, frame: Option<&LorentzFrame>) -> f64 {
        match self.model.dynamics {
            Dynamics::Classical => self.sigma.eval((p - pstar).norm()),
            Dynamics::Relativistic => {
                let owned;
                let f = match frame {
                    Some(f) => f,
                    None => {
                        owned = lorentz_frame(p, pstar, &self.model.constants);
                        &owned
                    }
                };
                moller_prefactor(f, &self.model.constants) * self.sigma.times_power(f.g, 1)
            }
        }
    }
}

/// `c sqrt(s) / (p0 p0*)`, the Moller velocity divided by `g`.
pub fn moller_prefactor(frame: &LorentzFrame, k: &PhysicalConstants) -> f64 {
    k.c * frame.s.sqrt() / (frame.p0 * frame.p0_star)
}

/// Moller velocity `v_c = c g sqrt(s) / (p0 p0*)`.
pub fn moller_velocity(p: &Vec3, pstar: &Vec3, k: &PhysicalConstants) -> f64 {
    let f = lorentz_frame(p, pstar, k);
    moller_prefactor(&f, k) * f.g
}

/// Angular factor on raw angles: `b(theta)` on the support, zero beyond.
fn b_raw(profile: &AngularProfile, theta: f64) -> f64 {
    let (lo, hi) = profile.support();
    if theta < lo || theta > hi {
        0.0
    } else {
        profile.b(theta)
    }
}

/// Classical kernel `B = sigma(|p - p*|) b(theta)`.
///
/// The symmetrized profile lives on `[0, pi/2]`; raw angles beyond it give 0.
/// For `p = p*` the angle is undefined and `sigma(0) b(0)` is returned.
pub fn kernel_classical(p: &Vec3, pstar: &Vec3, omega: &Vec3, spec: &KernelSpec) -> f64 {
    let u = (p - pstar).norm();
    let theta = classical_scattering_angle(p, pstar, omega).unwrap_or(0.0);
    spec.sigma.eval(u) * b_raw(&spec.angular, theta)
}

/// Relativistic kernel `B^c = v_c sigma^c(g) b(theta_hat)`; zero when `g = 0`.
pub fn kernel_relativistic(p: &Vec3, pstar: &Vec3, omega: &Vec3, spec: &KernelSpec) -> f64 {
    let f = lorentz_frame(p, pstar, &spec.model.constants);
    let Some(kh) = f.k_hat else { return 0.0 };
    let theta = kh.dot(omega).clamp(-1.0, 1.0).acos();
    moller_prefactor(&f, &spec.model.constants)
        * spec.sigma.times_power(f.g, 1)
        * b_raw(&spec.angular, theta)
}

/// Modified classical kernel `2^d |p - p*|^{2-d} B`.
pub fn modified_classical(b: f64, relative_speed: f64, d: usize) -> f64 {
    2f64.powi(d as i32) * relative_speed.powi(2 - d as i32) * b
}

/// Modified relativistic kernel `2^{d-2} sqrt(s) g^{2-d} / (p0' p0*') B^c`.
pub fn modified_relativistic(bc: f64, s: f64, g: f64, p0_out: f64, p0_star_out: f64, d: usize) -> f64 {
    2f64.powi(d as i32 - 2) * s.sqrt() * g.powi(2 - d as i32) / (p0_out * p0_star_out) * bc
}

/// Landau kernel: classical `sigma |p - p*|^2`, relativistic `v_c sigma^c g^2`.
pub fn kernel_landau(p: &Vec3, pstar: &Vec3, spec: &KernelSpec) -> f64 {
    match spec.model.dynamics {
        Dynamics::Classical => spec.sigma.times_power((p - pstar).norm(), 2),
        Dynamics::Relativistic => {
            let f = lorentz_frame(p, pstar, &spec.model.constants);
            moller_prefactor(&f, &spec.model.constants) * spec.sigma.times_power(f.g, 3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::AngularFamily;
    use kinetica_core::Statistics;

    fn spec(dynamics: Dynamics, d: usize) -> KernelSpec {
        let model = ModelSpec::new(dynamics, Statistics::MAXWELL, d, PhysicalConstants::default())
            .unwrap();
        let ang = AngularProfile::new(AngularFamily::Constant, d).unwrap();
        KernelSpec::new(SigmaFamily::default(), ang, model).unwrap()
    }

    #[test]
    fn classical_examples() {
        let s = spec(Dynamics::Classical, 3);
        let p = Vec3::new(1.0, 0.0, 0.0);
        let q = Vec3::new(-1.0, 0.0, 0.0);
        let w = Vec3::new(0.6, 0.8, 0.0);
        assert_eq!(kernel_classical(&p, &q, &w, &s), 1.0);
        assert!((modified_classical(0.25, 2.0, 3) - 1.0).abs() < 1e-15);
        let pl = SigmaFamily::PowerLaw {
            sigma0: 1.0,
            gamma: 1.0,
        };
        let s2 = KernelSpec { sigma: pl, ..s };
        assert_eq!(kernel_classical(&p, &p, &w, &s2), 0.0);
    }

    #[test]
    fn relativistic_examples() {
        let s = spec(Dynamics::Relativistic, 3);
        let p = Vec3::new(1.0, 0.0, 0.0);
        let q = -p;
        let v = moller_velocity(&p, &q, &s.model.constants);
        assert!((v - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        let w = Vec3::new(0.6, 0.8, 0.0);
        assert!((kernel_relativistic(&p, &q, &w, &s) - v).abs() < 1e-14);
        assert_eq!(kernel_relativistic(&p, &p, &w, &s), 0.0);
        assert!((kernel_landau(&p, &q, &s) - 8.0 * 2f64.sqrt()).abs() < 1e-13);
        assert_eq!(kernel_landau(&p, &p, &s), 0.0);
    }

    #[test]
    fn landau_classical_example() {
        let s = spec(Dynamics::Classical, 2);
        let p = Vec3::new(3.0, 0.0, 0.0);
        assert!((kernel_landau(&p, &Vec3::zeros(), &s) - 9.0).abs() < 1e-14);
        assert_eq!(kernel_landau(&p, &p, &s), 0.0);
    }
}
