//! Newtonian limit `c -> infinity`: kinematic gaps and the weak-form gap
//! between relativistic and classical operators.

use kinetica_boltzmann::{weak_forms, QuadratureSpec};
use kinetica_core::{node_rng, Distribution, Error, ModelSpec, PhysicalConstants, Result, Vec3};
use kinetica_kernels::{moller_velocity, KernelSpec};
use kinetica_kinematics::{classical_post_collision, lorentz_frame};
use rand::Rng;

use crate::report::SweepReport;
use crate::testfn::GaussianTest;

/// Minimum observed order in `1/c`.
pub const NEWTONIAN_MIN_ORDER: f64 = 1.8;

/// The five gap sweeps of the Newtonian limit.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonianReport {
    /// `max |g - |p - p*||`.
    pub relative_momentum: SweepReport,
    /// `max |v_c - 2 |p - p*| / m| m / 2`.
    pub moller: SweepReport,
    /// `max |p_hat' - p'|` over the sampled directions.
    pub post_collision: SweepReport,
    /// `max |c p / p0 - p / m|`.
    pub transport: SweepReport,
    /// `|<Q^c(f), phi> - <Q(f), phi>|` with `sigma^c = m sigma / (2 g)`.
    pub weak_form: SweepReport,
}

impl NewtonianReport {
    pub fn sweeps(&self) -> [(&'static str, &SweepReport); 5] {
        [
            ("relative_momentum", &self.relative_momentum),
            ("moller_velocity", &self.moller),
            ("post_collision", &self.post_collision),
            ("transport_velocity", &self.transport),
            ("weak_form", &self.weak_form),
        ]
    }

    pub fn pass(&self) -> bool {
        self.sweeps().iter().all(|(_, r)| r.pass)
    }
}

/// Random pairs and unit directions in a ball of radius `radius`.
pub fn random_pairs(d: usize, count: usize, radius: f64, seed: u64) -> Vec<(Vec3, Vec3, Vec3)> {
    let mut rng = node_rng(seed, 0x4e57);
    let mut draw = |scale: f64| {
        let mut v = Vec3::zeros();
        for a in 0..d {
            v[a] = rng.gen_range(-scale..scale);
        }
        v
    };
    (0..count)
        .map(|_| {
            let p = draw(radius);
            let q = draw(radius);
            let mut w = draw(1.0);
            while w.norm() < 1e-3 {
                w = draw(1.0);
            }
            (p, q, w.normalize())
        })
        .collect()
}

fn kinematic_gaps(pairs: &[(Vec3, Vec3, Vec3)], model: &ModelSpec) -> [f64; 4] {
    let k = &model.constants;
    let m = k.m;
    let mut gaps = [0.0f64; 4];
    for (p, q, w) in pairs {
        let u = (p - q).norm();
        let frame = lorentz_frame(p, q, k);
        gaps[0] = gaps[0].max((frame.g - u).abs());
        gaps[1] = gaps[1].max((moller_velocity(p, q, k) - 2.0 * u / m).abs() * 0.5 * m);
        let (pc, qc) = classical_post_collision(p, q, w);
        let out = frame.outgoing(p, q, w);
        gaps[2] = gaps[2].max((out.p - pc).norm().max((out.pstar - qc).norm()));
        gaps[3] = gaps[3].max((model.velocity(p) - p / m).norm());
    }
    gaps
}

/// Newtonian sweep over increasing `c` at fixed `m`.
///
/// `classical` carries the classical kernel; the relativistic kernel at each
/// `c` uses the Newtonian partner cross-section and the same angular profile.
pub fn newtonian_sweep(
    f: &Distribution,
    phi: &GaussianTest,
    classical: &KernelSpec,
    quad: &QuadratureSpec,
    pairs: &[(Vec3, Vec3, Vec3)],
    c_list: &[f64],
) -> Result<NewtonianReport> {
    if c_list.is_empty() || c_list.windows(2).any(|c| c[1] <= c[0]) {
        return Err(Error::Invalid {
            field: "c_list",
            reason: "speeds of light must be strictly increasing".into(),
        });
    }
    let base = classical.model;
    let value = |p: &Vec3| phi.value(p);
    let reference = weak_forms(f, &[&value], classical, quad)?[0].value;
    let mut gaps: [Vec<f64>; 5] = Default::default();
    for &c in c_list {
        let constants = PhysicalConstants::new(base.constants.m, c, base.constants.hbar)?;
        let model = ModelSpec::relativistic(base.statistics, base.d)?.with_constants(constants);
        for (g, v) in gaps.iter_mut().zip(kinematic_gaps(pairs, &model)) {
            g.push(v);
        }
        let kernel = KernelSpec::new(
            classical.sigma.newtonian_partner(constants.m),
            classical.angular,
            model,
        )?;
        let rel = weak_forms(f, &[&value], &kernel, quad)?[0].value;
        gaps[4].push((rel - reference).abs());
    }
    let [g, v, post, transport, weak] = gaps;
    let sweep = |e: Vec<f64>| SweepReport::new("c", c_list.to_vec(), e, NEWTONIAN_MIN_ORDER, 0.0);
    Ok(NewtonianReport {
        relative_momentum: sweep(g),
        moller: sweep(v),
        post_collision: sweep(post),
        transport: sweep(transport),
        weak_form: sweep(weak),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use kinetica_core::Statistics;

    #[test]
    fn symmetric_pairs_have_exact_relative_momentum() {
        let model = ModelSpec::relativistic(Statistics::MAXWELL, 3)
            .unwrap()
            .with_constants(PhysicalConstants::new(1.0, 5.0, 1.0).unwrap());
        let p = Vec3::new(0.7, -1.1, 0.4);
        let g = lorentz_frame(&p, &-p, &model.constants).g;
        assert_eq!(g, (2.0 * p).norm());
    }
}
