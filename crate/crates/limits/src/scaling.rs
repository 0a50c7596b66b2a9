//! Semiclassical, kinetic and linear limits at the operator level, with
//! their polynomial expansion oracles.

use kinetica_boltzmann::{quantum_bracket, weak_forms_bracket, Bracket, QuadratureSpec};
use kinetica_core::{node_rng, BoxRule, Distribution, Error, Result, Vec3};
use kinetica_kernels::KernelSpec;
use rand::Rng;

use crate::report::SweepReport;
use crate::testfn::GaussianTest;

/// Minimum observed order of the scaling sweeps.
pub const SCALING_MIN_ORDER: f64 = 0.9;

fn weak(f: &Distribution, phi: &GaussianTest, kernel: &KernelSpec, quad: &QuadratureSpec, bracket: Bracket) -> Result<f64> {
    let value = |p: &Vec3| phi.value(p);
    Ok(weak_forms_bracket(f, &[&value], kernel, quad, bracket)?[0].value)
}

/// Same polar rule with twice the box nodes per axis.
fn refined(quad: &QuadratureSpec) -> Result<QuadratureSpec> {
    let m = &quad.momentum;
    QuadratureSpec::new(
        BoxRule::gauss_legendre(m.d, m.halfwidth, 2 * m.nodes_per_axis)?,
        quad.angular.clone(),
        quad.sampling,
    )
}

fn check_decreasing(field: &'static str, list: &[f64]) -> Result<()> {
    if list.is_empty() || list.windows(2).any(|x| x[1] >= x[0]) {
        return Err(Error::Invalid {
            field,
            reason: "sweep values must be strictly decreasing".into(),
        });
    }
    Ok(())
}

/// Runs `error(x)` over the list and attaches the refined-quadrature floor
/// at the last value.
fn sweep(
    parameter: &str,
    list: &[f64],
    quad: &QuadratureSpec,
    error: impl Fn(f64, &QuadratureSpec) -> Result<f64>,
) -> Result<SweepReport> {
    let errors = list.iter().map(|&x| error(x, quad)).collect::<Result<Vec<_>>>()?;
    let last = *list.last().expect("non-empty");
    let floor = (error(last, &refined(quad)?)? - errors[errors.len() - 1]).abs();
    Ok(SweepReport::new(parameter, list.to_vec(), errors, SCALING_MIN_ORDER, 0.0).with_floor(floor))
}

/// `|<Q_{hbar alpha}(f), phi> - <Q_0(f), phi>|` over decreasing `hbar`.
pub fn semiclassical_sweep(
    f: &Distribution,
    phi: &GaussianTest,
    kernel: &KernelSpec,
    quad: &QuadratureSpec,
    alpha: f64,
    hbar_list: &[f64],
) -> Result<SweepReport> {
    check_decreasing("hbar_list", hbar_list)?;
    sweep("hbar", hbar_list, quad, |h, q| {
        let quantum = weak(f, phi, kernel, q, Bracket::Quantum(h * alpha))?;
        let classical = weak(f, phi, kernel, q, Bracket::Quantum(0.0))?;
        Ok((quantum - classical).abs())
    })
}

/// `|eps <Q^{Bose, 1/eps}(f), phi> - <Q_wave(f), phi>|` over decreasing `eps`.
pub fn kinetic_limit_check(
    f: &Distribution,
    phi: &GaussianTest,
    kernel: &KernelSpec,
    quad: &QuadratureSpec,
    eps_list: &[f64],
) -> Result<SweepReport> {
    check_decreasing("eps_list", eps_list)?;
    sweep("epsilon", eps_list, quad, |eps, q| {
        let bose = weak(f, phi, kernel, q, Bracket::Quantum(1.0 / eps))?;
        let wave = weak(f, phi, kernel, q, Bracket::Wave)?;
        Ok((eps * bose - wave).abs())
    })
}

/// `|eps^{-1} <Q_base(1 + eps f), phi> - <Q_linear(f), phi>|` over
/// decreasing `eps`, with `base` the Maxwell or wave bracket.
pub fn linear_limit_check(
    f_pert: &Distribution,
    phi: &GaussianTest,
    kernel: &KernelSpec,
    quad: &QuadratureSpec,
    base: Bracket,
    eps_list: &[f64],
) -> Result<SweepReport> {
    check_decreasing("eps_list", eps_list)?;
    sweep("epsilon", eps_list, quad, |eps, q| {
        let g = f_pert.perturbed(1.0, eps);
        let full = weak(&g, phi, kernel, q, base)?;
        let linear = weak(f_pert, phi, kernel, q, Bracket::Linear)?;
        Ok((full / eps - linear).abs())
    })
}

/// Largest relative defects of the polynomial expansions on random 4-tuples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionOracles {
    pub tuples: usize,
    /// `Q_{h a} = Q_0 + h a Q_wave`.
    pub semiclassical: f64,
    /// `Q^{Bose, 1/eps} = eps^{-1} Q_wave + Q_0`.
    pub kinetic: f64,
    /// `Q_0(1 + eps f) = eps Q_linear(f) + eps^2 Q_0(f)`.
    pub linear_maxwell: f64,
    /// `Q_wave(1 + eps f) = eps Q_linear(f) + 2 eps^2 Q_0(f) + eps^3 Q_wave(f)`.
    pub linear_wave: f64,
}

impl ExpansionOracles {
    pub fn max_defect(&self) -> f64 {
        self.semiclassical
            .max(self.kinetic)
            .max(self.linear_maxwell)
            .max(self.linear_wave)
    }
}

/// Checks the expansions on `tuples` random 4-tuples in `(0, 1)^4` at a
/// spread of `hbar` and `eps`.
pub fn expansion_oracles(tuples: usize, seed: u64) -> ExpansionOracles {
    let mut rng = node_rng(seed, 0x0e4a);
    let mut out = ExpansionOracles {
        tuples,
        semiclassical: 0.0,
        kinetic: 0.0,
        linear_maxwell: 0.0,
        linear_wave: 0.0,
    };
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1.0);
    let maxwell = |v: [f64; 4]| Bracket::Quantum(0.0).eval(v[0], v[1], v[2], v[3]);
    let wave = |v: [f64; 4]| Bracket::Wave.eval(v[0], v[1], v[2], v[3]);
    let linear = |v: [f64; 4]| Bracket::Linear.eval(v[0], v[1], v[2], v[3]);
    for _ in 0..tuples {
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.01..1.0));
        let h = rng.gen_range(0.01..1.0);
        let alpha = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let eps = rng.gen_range(0.01..1.0);
        let q = |a: f64| quantum_bracket(a, v[0], v[1], v[2], v[3]);
        out.semiclassical = out.semiclassical.max(rel(q(h * alpha), maxwell(v) + h * alpha * wave(v)));
        out.kinetic = out.kinetic.max(rel(q(1.0 / eps), wave(v) / eps + maxwell(v)));
        let g = v.map(|x| 1.0 + eps * x);
        out.linear_maxwell = out
            .linear_maxwell
            .max(rel(maxwell(g), eps * linear(v) + eps * eps * maxwell(v)));
        out.linear_wave = out.linear_wave.max(rel(
            wave(g),
            eps * linear(v) + 2.0 * eps * eps * maxwell(v) + eps.powi(3) * wave(v),
        ));
    }
    out
}
