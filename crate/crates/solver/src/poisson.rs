//! Discrete Poisson operator of the slab and its structural checks.
//!
//! `L(f) xi = -D_x (f D_p xi) + D_p (f D_x xi)` with `p` the `p_x` axis,
//! `D_x` the periodic centred difference and `D_p` the centred difference
//! with zero ghosts. The mobility is `f` on nodes with both `p_x` neighbours
//! and zero on the two outer `p_x` layers, which keeps constants in the
//! kernel. Both difference matrices are antisymmetric, so `L(f)` is
//! antisymmetric in the weighted inner product for any nodal `f`.
//!
//! For the entropy `S = -H` the flux `f D(dS)` is taken in the discrete chain
//! rule form `-D g(f)` with `g' = f h''`, which makes `L dS` a difference of
//! commuting mixed differences.

use std::f64::consts::PI;

use kinetica_core::{standard_fixtures, Error, ModelSpec, Result, Statistics, Vec3};

use crate::slab::SlabGrid;

fn dx_periodic(g: &SlabGrid, v: &[f64], ix: usize, k: usize) -> f64 {
    let up = v[g.index((ix + 1) % g.nx, k)];
    let down = v[g.index((ix + g.nx - 1) % g.nx, k)];
    (up - down) / (2.0 * g.dx())
}

fn dp_zero(g: &SlabGrid, v: &[f64], ix: usize, k: usize) -> f64 {
    let m = &g.momentum;
    let up = m.neighbour(k, 0, 1).map_or(0.0, |j| v[g.index(ix, j)]);
    let down = m.neighbour(k, 0, -1).map_or(0.0, |j| v[g.index(ix, j)]);
    (up - down) / (2.0 * m.h)
}

fn map_nodes(g: &SlabGrid, mut f: impl FnMut(usize, usize) -> f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(g.len());
    for ix in 0..g.nx {
        for k in 0..g.np() {
            out.push(f(ix, k));
        }
    }
    out
}

/// `-D_x a + D_p b` for the flux components `a = f D_p xi`, `b = f D_x xi`.
fn divergence(g: &SlabGrid, a: &[f64], b: &[f64]) -> Vec<f64> {
    map_nodes(g, |ix, k| -dx_periodic(g, a, ix, k) + dp_zero(g, b, ix, k))
}

fn mobility(g: &SlabGrid, f: &[f64], ix: usize, k: usize) -> f64 {
    let m = &g.momentum;
    if m.neighbour(k, 0, 1).is_some() && m.neighbour(k, 0, -1).is_some() {
        f[g.index(ix, k)]
    } else {
        0.0
    }
}

/// `L(f) xi` with the pointwise mobility `f`.
pub fn poisson_apply(g: &SlabGrid, f: &[f64], xi: &[f64]) -> Result<Vec<f64>> {
    for (field, v) in [("f", f), ("xi", xi)] {
        if v.len() != g.len() {
            return Err(Error::Invalid {
                field,
                reason: format!("expected {} slab values, got {}", g.len(), v.len()),
            });
        }
    }
    let a = map_nodes(g, |ix, k| mobility(g, f, ix, k) * dp_zero(g, xi, ix, k));
    let b = map_nodes(g, |ix, k| mobility(g, f, ix, k) * dx_periodic(g, xi, ix, k));
    Ok(divergence(g, &a, &b))
}

/// `g(f)` with `g' = f h''(f)`.
pub fn entropy_flux_potential(f: f64, statistics: Statistics) -> f64 {
    match statistics {
        Statistics::Quantum { alpha: 0 } => f,
        Statistics::Quantum { alpha } => (alpha as f64 * f).ln_1p() / alpha as f64,
        Statistics::Wave => f.ln(),
        Statistics::Linear => 0.5 * f * f,
    }
}

/// `L(f) dS` with the flux `f D(dS) = -D g(f)`.
pub fn poisson_apply_entropy(g: &SlabGrid, f: &[f64], statistics: Statistics) -> Vec<f64> {
    let gf: Vec<f64> = f.iter().map(|v| entropy_flux_potential(*v, statistics)).collect();
    let a = map_nodes(g, |ix, k| -dp_zero(g, &gf, ix, k));
    let b = map_nodes(g, |ix, k| -dx_periodic(g, &gf, ix, k));
    divergence(g, &a, &b)
}

/// Relative defects of the structural checks on one slab state.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonReport {
    pub fixture: String,
    /// `|<L xi, eta> + <xi, L eta>|` over the sum of absolute terms.
    pub antisymmetry: f64,
    /// `max |L 1|` over `max |L xi|`.
    pub constant: f64,
    /// `max |L dE + v_x D_x f|` over `max |v_x D_x f|`.
    pub transport: f64,
    /// `max |L dS|` over the largest single mixed-difference term.
    pub entropy: f64,
    /// `L dS` with the pointwise mobility and `dS = -h'(f)`; not a check,
    /// it shows the size of the chain rule defect that the flux form removes.
    pub entropy_pointwise: f64,
    pub pass: bool,
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Runs the checks on `f` with smooth test fields.
pub fn poisson_check(g: &SlabGrid, model: &ModelSpec, fixture: &str, f: &[f64], tolerance: f64) -> Result<PoissonReport> {
    let k = 2.0 * PI / g.length;
    let nodes = |h: &dyn Fn(f64, &Vec3) -> f64| g.sample(h);
    let xi = nodes(&|x, p| (k * x).sin() * p.x + (2.0 * k * x).cos() * (-0.1 * p.norm_squared()).exp());
    let eta = nodes(&|x, p| (k * x).cos() * p.y * p.x + (3.0 * k * x).sin() * (0.3 * p.x).sin());
    let w = g.weight();
    let lxi = poisson_apply(g, f, &xi)?;
    let leta = poisson_apply(g, f, &eta)?;
    let a: f64 = lxi.iter().zip(&eta).map(|(x, y)| x * y * w).sum();
    let b: f64 = xi.iter().zip(&leta).map(|(x, y)| x * y * w).sum();
    let scale: f64 = lxi.iter().zip(&eta).map(|(x, y)| (x * y * w).abs()).sum::<f64>()
        + xi.iter().zip(&leta).map(|(x, y)| (x * y * w).abs()).sum::<f64>();
    let antisymmetry = (a + b).abs() / scale.max(f64::MIN_POSITIVE);

    let ones = vec![1.0; g.len()];
    let constant = max_abs(&poisson_apply(g, f, &ones)?) / max_abs(&lxi).max(f64::MIN_POSITIVE);

    let de = nodes(&|_, p| model.energy(p));
    let lde = poisson_apply(g, f, &de)?;
    let target = map_nodes(g, |ix, kk| -model.velocity(&g.momentum.points[kk]).x * dx_periodic(g, f, ix, kk));
    let transport = lde.iter().zip(&target).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
        / max_abs(&target).max(f64::MIN_POSITIVE);

    let stats = model.statistics;
    let lds = poisson_apply_entropy(g, f, stats);
    let gf: Vec<f64> = f.iter().map(|v| entropy_flux_potential(*v, stats)).collect();
    let mixed = max_abs(&gf) / (g.dx() * g.momentum.h);
    let entropy = max_abs(&lds) / mixed.max(f64::MIN_POSITIVE);

    let ds: Vec<f64> = f.iter().map(|v| -kinetica_core::entropy_prime(*v, stats)).collect();
    let entropy_pointwise = max_abs(&poisson_apply(g, f, &ds)?) / mixed.max(f64::MIN_POSITIVE);

    let pass = [antisymmetry, constant, transport, entropy].iter().all(|v| *v <= tolerance);
    Ok(PoissonReport {
        fixture: fixture.to_string(),
        antisymmetry,
        constant,
        transport,
        entropy,
        entropy_pointwise,
        pass,
    })
}

/// Slab state `(1 + a cos(2 pi x / X)) F(p)` for a momentum profile `F`.
pub fn modulated(g: &SlabGrid, profile: impl Fn(&Vec3) -> f64, amplitude: f64) -> Vec<f64> {
    let k = 2.0 * PI / g.length;
    g.sample(|x, p| (1.0 + amplitude * (k * x).cos()) * profile(p))
}

/// The checks on the first three standard fixtures, each modulated in space.
pub fn poisson_checks(g: &SlabGrid, model: &ModelSpec, tolerance: f64) -> Result<Vec<PoissonReport>> {
    standard_fixtures(model)?
        .into_iter()
        .take(3)
        .map(|(name, dist)| {
            let f = modulated(g, |p| dist.value(p), 0.3);
            poisson_check(g, model, name, &f, tolerance)
        })
        .collect()
}
