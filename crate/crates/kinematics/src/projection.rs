//! Projections used by Landau-type operators.
//!
//! The relativistic projection is computed in a division-free scaled form
//! `g^2 S`. With `P = p0 p0* - p . p*` and `g^2 = 2 (P - (mc)^2)`:
//!
//! `g^2 S = 2 / (P + (mc)^2) [ (P^2 - (mc)^4) I - (mc)^2 (p p^T + p* p*^T)
//!          + P (p p*^T + p* p^T) ]`,
//!
//! which agrees with `Lt^T (I - k k^T) Lt` for the boost block `Lt`.

use kinetica_core::{Error, Mat3, PhysicalConstants, Result, Vec3};

use crate::lorentz::lorentz_frame;

/// `I - u u^T` with `u = (p - p*)/|p - p*|`, acting on the first `d` axes.
pub fn landau_projection(p: &Vec3, pstar: &Vec3, d: usize) -> Result<Mat3> {
    let u = p - pstar;
    let n2 = u.norm_squared();
    if n2 == 0.0 {
        return Err(Error::SingularPair);
    }
    Ok(spatial_identity(d) - u * u.transpose() / n2)
}

/// `|p - p*|^2 I - u u^T`, the division-free classical Landau matrix.
pub fn landau_projection_scaled(p: &Vec3, pstar: &Vec3, d: usize) -> Mat3 {
    let u = p - pstar;
    spatial_identity(d) * u.norm_squared() - u * u.transpose()
}

pub(crate) fn spatial_identity(d: usize) -> Mat3 {
    let mut m = Mat3::identity();
    if d == 2 {
        m[(2, 2)] = 0.0;
    }
    m
}

/// Division-free `g^2 S(p, p*)`; vanishes smoothly on the diagonal.
pub fn relativistic_projection_scaled(
    p: &Vec3,
    pstar: &Vec3,
    k: &PhysicalConstants,
    d: usize,
) -> Mat3 {
    let mc2 = k.mc() * k.mc();
    let frame = lorentz_frame(p, pstar, k);
    let half_g2 = 0.5 * frame.g * frame.g;
    let big_p = half_g2 + mc2;
    let cross = p * pstar.transpose() + pstar * p.transpose();
    let own = p * p.transpose() + pstar * pstar.transpose();
    let bracket =
        spatial_identity(d) * (half_g2 * (big_p + mc2)) - own * mc2 + cross * big_p;
    bracket * (2.0 / (big_p + mc2))
}

/// `S(p, p*)` in closed form.
pub fn relativistic_projection(
    p: &Vec3,
    pstar: &Vec3,
    k: &PhysicalConstants,
    d: usize,
) -> Result<Mat3> {
    let frame = lorentz_frame(p, pstar, k);
    if frame.g == 0.0 {
        return Err(Error::SingularPair);
    }
    Ok(relativistic_projection_scaled(p, pstar, k, d) / (frame.g * frame.g))
}

/// `S(p, p*)` through the boost: `Lt^T (I - k k^T) Lt`.
pub fn relativistic_projection_boosted(
    p: &Vec3,
    pstar: &Vec3,
    k: &PhysicalConstants,
    d: usize,
) -> Result<Mat3> {
    let frame = lorentz_frame(p, pstar, k);
    let kh = frame.k_hat.ok_or(Error::SingularPair)?;
    let pi = spatial_identity(d) - kh * kh.transpose();
    Ok(frame.lambda_tilde.transpose() * pi * frame.lambda_tilde)
}
