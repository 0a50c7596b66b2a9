//! Centre-of-momentum frames and relativistic collisions.
//!
//! Four-vectors are stored as `Vector4` with the time component first and
//! the spatial block padded like [`Vec3`]; in two dimensions the last
//! spatial slot is inert.

use kinetica_core::{Error, Mat3, PhysicalConstants, Result, Vec3};
use nalgebra::{Matrix4, Vector4};

use crate::safe_acos;

/// Centre-of-momentum quantities for a pair `(p, p*)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzFrame {
    pub p0: f64,
    pub p0_star: f64,
    /// `s = (p0 + p0*)^2 - |p + p*|^2`.
    pub s: f64,
    /// Relative momentum, `s = 4 (mc)^2 + g^2`.
    pub g: f64,
    /// Boost velocity `(p + p*) / (p0 + p0*)`.
    pub v: Vec3,
    /// Lorentz factor `(p0 + p0*) / sqrt(s)`.
    pub rho: f64,
    pub lambda: Matrix4<f64>,
    pub lambda_inv: Matrix4<f64>,
    /// Spatial block `I + (rho - 1) v v^T / |v|^2`.
    pub lambda_tilde: Mat3,
    /// Direction of the boosted relative momentum; `None` when `g = 0`.
    pub k_hat: Option<Vec3>,
}

/// Relativistic outgoing momenta and their time components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativisticOutgoing {
    pub p: Vec3,
    pub pstar: Vec3,
    pub p0: f64,
    pub p0_star: f64,
}

fn p0_of(p: &Vec3, mc: f64) -> f64 {
    (mc * mc + p.norm_squared()).sqrt()
}

/// Builds the boost into the centre-of-momentum frame of `(p, p*)`.
pub fn lorentz_frame(p: &Vec3, pstar: &Vec3, k: &PhysicalConstants) -> LorentzFrame {
    let mc = k.mc();
    let p0 = p0_of(p, mc);
    let p0s = p0_of(pstar, mc);
    let total = p + pstar;
    let e = p0 + p0s;
    let v = total / e;
    let u = p - pstar;
    // g^2 = |u|^2 - (u . v)^2 avoids cancellation when p is close to p*
    let uv = u.dot(&v);
    let g = (u.norm_squared() - uv * uv).max(0.0).sqrt();
    let s = 4.0 * mc * mc + g * g;
    let rho = e / s.sqrt();
    // (rho - 1) / |v|^2 = rho^2 / (rho + 1), smooth at v = 0
    let coef = rho * rho / (rho + 1.0);
    let lambda_tilde = Mat3::identity() + v * v.transpose() * coef;
    let mut lambda = Matrix4::zeros();
    let mut lambda_inv = Matrix4::zeros();
    lambda[(0, 0)] = rho;
    lambda_inv[(0, 0)] = rho;
    for i in 0..3 {
        lambda[(0, i + 1)] = -rho * v[i];
        lambda[(i + 1, 0)] = -rho * v[i];
        lambda_inv[(0, i + 1)] = rho * v[i];
        lambda_inv[(i + 1, 0)] = rho * v[i];
        for j in 0..3 {
            lambda[(i + 1, j + 1)] = lambda_tilde[(i, j)];
            lambda_inv[(i + 1, j + 1)] = lambda_tilde[(i, j)];
        }
    }
    let diff = lambda_tilde * u - v * (rho * (p0 - p0s));
    let n = diff.norm();
    let k_hat = if g > 0.0 && n > 0.0 {
        Some(diff / n)
    } else {
        None
    };
    LorentzFrame {
        p0,
        p0_star: p0s,
        s,
        g,
        v,
        rho,
        lambda,
        lambda_inv,
        lambda_tilde,
        k_hat,
    }
}

impl LorentzFrame {
    /// Applies the boost to a four-vector `(t, x)`.
    pub fn boost(&self, t: f64, x: &Vec3) -> (f64, Vec3) {
        let b = self.lambda * Vector4::new(t, x.x, x.y, x.z);
        (b[0], Vec3::new(b[1], b[2], b[3]))
    }

    /// Applies the inverse boost.
    pub fn unboost(&self, t: f64, x: &Vec3) -> (f64, Vec3) {
        let b = self.lambda_inv * Vector4::new(t, x.x, x.y, x.z);
        (b[0], Vec3::new(b[1], b[2], b[3]))
    }

    /// Outgoing momenta for direction `omega` in the centre-of-momentum frame.
    pub fn outgoing(&self, p: &Vec3, pstar: &Vec3, omega: &Vec3) -> RelativisticOutgoing {
        let mid = (p + pstar) * 0.5;
        let rot = self.lambda_tilde * omega * (0.5 * self.g);
        let e_mid = 0.5 * (self.p0 + self.p0_star);
        let e_rot = 0.5 * self.g * (p + pstar).dot(omega) / self.s.sqrt();
        RelativisticOutgoing {
            p: mid + rot,
            pstar: mid - rot,
            p0: e_mid + e_rot,
            p0_star: e_mid - e_rot,
        }
    }
}

/// Relativistic post-collision momenta for direction `omega`.
pub fn relativistic_post_collision(
    p: &Vec3,
    pstar: &Vec3,
    omega: &Vec3,
    k: &PhysicalConstants,
) -> RelativisticOutgoing {
    lorentz_frame(p, pstar, k).outgoing(p, pstar, omega)
}

/// Raw relativistic scattering angle in `[0, pi]` from Minkowski products.
///
/// The sign is chosen so that the identity collision has angle zero.
pub fn minkowski_scattering_angle(
    p: &Vec3,
    pstar: &Vec3,
    out: &RelativisticOutgoing,
    k: &PhysicalConstants,
) -> Result<f64> {
    let frame = lorentz_frame(p, pstar, k);
    if frame.g == 0.0 {
        return Err(Error::UndefinedAngle);
    }
    let dt = frame.p0 - frame.p0_star;
    let dt_out = out.p0 - out.p0_star;
    let spatial = (p - pstar).dot(&(out.p - out.pstar));
    Ok(safe_acos((spatial - dt * dt_out) / (frame.g * frame.g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_pair() {
        let k = PhysicalConstants::default();
        let p = Vec3::new(1.0, 0.0, 0.0);
        let f = lorentz_frame(&p, &-p, &k);
        assert!((f.s - 8.0).abs() < 1e-14);
        assert!((f.g - 2.0).abs() < 1e-14);
        assert_eq!(f.v, Vec3::zeros());
        assert!((f.rho - 1.0).abs() < 1e-15);
        assert!((f.lambda_tilde - Mat3::identity()).norm() < 1e-15);
        assert!((f.k_hat.unwrap() - p).norm() < 1e-15);
        let out = f.outgoing(&p, &-p, &Vec3::new(0.0, 1.0, 0.0));
        assert!((out.p - Vec3::new(0.0, 1.0, 0.0)).norm() < 1e-15);
        assert!((out.pstar - Vec3::new(0.0, -1.0, 0.0)).norm() < 1e-15);
        assert!((out.p0 - 2f64.sqrt()).abs() < 1e-15);
        assert!((out.p0_star - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn identity_collision_along_k_hat() {
        let k = PhysicalConstants::new(1.3, 0.7, 1.0).unwrap();
        let p = Vec3::new(0.4, -1.1, 0.9);
        let q = Vec3::new(-0.8, 0.3, 0.2);
        let f = lorentz_frame(&p, &q, &k);
        let out = f.outgoing(&p, &q, &f.k_hat.unwrap());
        assert!((out.p - p).norm() < 1e-13);
        assert!((out.pstar - q).norm() < 1e-13);
        assert!(minkowski_scattering_angle(&p, &q, &out, &k).unwrap() < 1e-6);
    }

    #[test]
    fn coincident_pair_has_no_direction() {
        let k = PhysicalConstants::default();
        let p = Vec3::new(0.5, 0.5, 0.0);
        let f = lorentz_frame(&p, &p, &k);
        assert_eq!(f.g, 0.0);
        assert!(f.k_hat.is_none());
    }
}
