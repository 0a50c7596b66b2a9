//! Randomized audit of the relativistic machinery.

use kinetica_core::{node_rng, PhysicalConstants, Result, Vec3};
use rand::Rng;

use crate::lorentz::{lorentz_frame, minkowski_scattering_angle};
use crate::projection::{relativistic_projection, relativistic_projection_boosted};
use crate::safe_acos;

/// Worst defects over all samples for one `(m, c, d)` combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzAudit {
    pub m: f64,
    pub c: f64,
    pub d: usize,
    pub samples: usize,
    /// `max |Lambda Lambda^{-1} - I|`.
    pub inverse_defect: f64,
    /// Relative error of the boosted pair against `(sqrt(s)/2, +-g k/2)`.
    pub boost_defect: f64,
    /// Relative momentum and energy conservation error.
    pub conservation_defect: f64,
    /// Relative mass-shell error of outgoing momenta.
    pub on_shell_defect: f64,
    /// `|cos(theta_minkowski) - k . omega|`.
    pub angle_cos_defect: f64,
    /// `|theta_minkowski - acos(k . omega)|`.
    pub angle_defect: f64,
    /// Relative difference between closed-form and boosted `S`.
    pub projection_defect: f64,
    /// `|S (p/p0 - p*/p0*)|` relative to `|p/p0 - p*/p0*|`.
    pub projection_kernel_defect: f64,
}

fn random_vec(rng: &mut impl Rng, d: usize, scale: f64) -> Vec3 {
    let mut v = Vec3::zeros();
    for i in 0..d {
        v[i] = scale * (2.0 * rng.gen::<f64>() - 1.0);
    }
    v
}

fn random_direction(rng: &mut impl Rng, d: usize) -> Vec3 {
    loop {
        let v = random_vec(rng, d, 1.0);
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    }
}

fn max_abs(m: impl IntoIterator<Item = f64>) -> f64 {
    m.into_iter().fold(0.0, |a, b| a.max(b.abs()))
}

/// Runs the audit on `samples` random pairs with momenta in `[-3mc, 3mc]^d`.
pub fn lorentz_audit(
    constants: &PhysicalConstants,
    d: usize,
    samples: usize,
    seed: u64,
) -> Result<LorentzAudit> {
    let mc = constants.mc();
    let stream = ((d as u64) << 32) ^ (constants.m.to_bits() >> 20) ^ constants.c.to_bits();
    let mut rng = node_rng(seed, stream);
    let mut a = LorentzAudit {
        m: constants.m,
        c: constants.c,
        d,
        samples,
        inverse_defect: 0.0,
        boost_defect: 0.0,
        conservation_defect: 0.0,
        on_shell_defect: 0.0,
        angle_cos_defect: 0.0,
        angle_defect: 0.0,
        projection_defect: 0.0,
        projection_kernel_defect: 0.0,
    };
    for _ in 0..samples {
        let p = random_vec(&mut rng, d, 3.0 * mc);
        let q = random_vec(&mut rng, d, 3.0 * mc);
        let omega = random_direction(&mut rng, d);
        let f = lorentz_frame(&p, &q, constants);
        let Some(kh) = f.k_hat else { continue };

        let prod = f.lambda * f.lambda_inv;
        let mut id = nalgebra::Matrix4::<f64>::identity();
        if d == 2 {
            // the inert axis carries the identity too
            id[(3, 3)] = 1.0;
        }
        a.inverse_defect = a.inverse_defect.max(max_abs((prod - id).iter().cloned()));

        let half = 0.5 * f.s.sqrt();
        let (t1, x1) = f.boost(f.p0, &p);
        let (t2, x2) = f.boost(f.p0_star, &q);
        let target = kh * (0.5 * f.g);
        let boost = max_abs([
            (t1 - half) / half,
            (t2 - half) / half,
            (x1 - target).norm() / half,
            (x2 + target).norm() / half,
        ]);
        a.boost_defect = a.boost_defect.max(boost);

        let out = f.outgoing(&p, &q, &omega);
        let mom = (p + q - out.p - out.pstar).norm() / (p.norm() + q.norm() + mc);
        let en = (f.p0 + f.p0_star - out.p0 - out.p0_star) / (f.p0 + f.p0_star);
        a.conservation_defect = a.conservation_defect.max(mom.max(en.abs()));

        let shell = |t: f64, x: &Vec3| ((t * t - x.norm_squared()) - mc * mc).abs() / (t * t);
        a.on_shell_defect = a
            .on_shell_defect
            .max(shell(out.p0, &out.p))
            .max(shell(out.p0_star, &out.pstar));

        let theta_m = minkowski_scattering_angle(&p, &q, &out, constants)?;
        let cos_k = kh.dot(&omega);
        a.angle_cos_defect = a.angle_cos_defect.max((theta_m.cos() - cos_k).abs());
        a.angle_defect = a.angle_defect.max((theta_m - safe_acos(cos_k)).abs());

        let s_closed = relativistic_projection(&p, &q, constants, d)?;
        let s_boost = relativistic_projection_boosted(&p, &q, constants, d)?;
        let scale = max_abs(s_boost.iter().cloned()).max(1e-300);
        a.projection_defect = a
            .projection_defect
            .max(max_abs((s_closed - s_boost).iter().cloned()) / scale);
        let w = p / f.p0 - q / f.p0_star;
        if w.norm() > 0.0 {
            a.projection_kernel_defect = a
                .projection_kernel_defect
                .max((s_closed * w).norm() / (w.norm() * scale));
        }
    }
    Ok(a)
}
