//! Landau-type operators: strong form through a fourth-order divergence of
//! the pair flux integral, symmetric weak forms and entropy dissipation.

use kinetica_core::{entropy_second, BoxRule, Distribution, Error, Mat3, Result, Statistics, Vec3};
use kinetica_kernels::KernelSpec;
use rayon::prelude::*;

use crate::flux::{theta_landau, weighted_projection, LandauBracket, ProjectionForm};

/// Gradient of a test function.
pub type GradFn<'a> = &'a (dyn Fn(&Vec3) -> Vec3 + Sync);

/// Momentum rule, divergence step and projection form.
#[derive(Debug, Clone, PartialEq)]
pub struct LandauQuadrature {
    pub momentum: BoxRule,
    pub h_div: f64,
    pub projection: ProjectionForm,
}

impl LandauQuadrature {
    /// Tensor Gauss-Legendre rule with `h_div = L / (4 N)`.
    pub fn new(d: usize, halfwidth: f64, nodes: usize) -> Result<Self> {
        let momentum = BoxRule::gauss_legendre(d, halfwidth, nodes)?;
        Ok(Self {
            momentum,
            h_div: halfwidth / (4.0 * nodes as f64),
            projection: ProjectionForm::Closed,
        })
    }

    /// Default budget: half-width 6 with 24 nodes per axis in 2D, 12 in 3D.
    pub fn default_for(d: usize) -> Result<Self> {
        Self::new(d, 6.0, if d == 2 { 24 } else { 12 })
    }

    pub fn with_projection(mut self, form: ProjectionForm) -> Self {
        self.projection = form;
        self
    }

    pub fn with_h_div(mut self, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::Quadrature(format!("divergence step must be positive, got {h}")));
        }
        self.h_div = h;
        Ok(self)
    }
}

/// Values and gradients of `f` at the box nodes.
struct NodeCache {
    f: Vec<f64>,
    grad: Vec<Vec3>,
}

impl NodeCache {
    fn new(f: &Distribution, rule: &BoxRule) -> Self {
        Self {
            f: rule.points.iter().map(|p| f.value(p)).collect(),
            grad: rule.points.iter().map(|p| f.gradient(p)).collect(),
        }
    }
}

/// `J(q) = int kernel * projection * field(q, p*) dp*`.
fn pair_integral(
    f: &Distribution,
    cache: &NodeCache,
    q: &Vec3,
    kernel: &KernelSpec,
    quad: &LandauQuadrature,
    bracket: LandauBracket,
) -> Result<Vec3> {
    let (fq, gq) = (f.value(q), f.gradient(q));
    let rule = &quad.momentum;
    let mut j = Vec3::zeros();
    for (k, (ps, w)) in rule.points.iter().zip(&rule.weights).enumerate() {
        let km = weighted_projection(q, ps, kernel, quad.projection);
        j += km * bracket.field(fq, cache.f[k], &gq, &cache.grad[k]) * *w;
    }
    if j.iter().all(|v| v.is_finite()) {
        Ok(j)
    } else {
        Err(Error::poisoned(q, q, "Landau flux integral is not finite"))
    }
}

fn divergence(
    f: &Distribution,
    cache: &NodeCache,
    p: &Vec3,
    kernel: &KernelSpec,
    quad: &LandauQuadrature,
    bracket: LandauBracket,
) -> Result<f64> {
    let h = quad.h_div;
    let mut total = 0.0;
    for a in 0..kernel.model.d {
        let mut e = Vec3::zeros();
        e[a] = h;
        let j = |s: f64| pair_integral(f, cache, &(p + e * s), kernel, quad, bracket).map(|v| v[a]);
        total += (8.0 * (j(1.0)? - j(-1.0)?) - (j(2.0)? - j(-2.0)?)) / (12.0 * h);
    }
    Ok(total)
}

/// `Q_L(f)(p)` with an explicit bracket.
pub fn evaluate_ql_bracket(
    f: &Distribution,
    p: &Vec3,
    kernel: &KernelSpec,
    quad: &LandauQuadrature,
    bracket: LandauBracket,
) -> Result<f64> {
    let cache = NodeCache::new(f, &quad.momentum);
    divergence(f, &cache, p, kernel, quad, bracket)
}

/// `Q_L(f)(p) = div_p int kernel * projection * field dp*`.
pub fn evaluate_ql(f: &Distribution, p: &Vec3, kernel: &KernelSpec, quad: &LandauQuadrature) -> Result<f64> {
    evaluate_ql_bracket(f, p, kernel, quad, LandauBracket::from_statistics(kernel.model.statistics))
}

/// `Q_L(f)` at many points, in parallel.
pub fn evaluate_ql_many(
    f: &Distribution,
    points: &[Vec3],
    kernel: &KernelSpec,
    quad: &LandauQuadrature,
    bracket: LandauBracket,
) -> Result<Vec<f64>> {
    let cache = NodeCache::new(f, &quad.momentum);
    points
        .par_iter()
        .map(|p| divergence(f, &cache, p, kernel, quad, bracket))
        .collect()
}

/// `int Q_L(f) phi dp` from the strong form on the box nodes.
pub fn landau_strong_pairing(
    f: &Distribution,
    phi: &(dyn Fn(&Vec3) -> f64 + Sync),
    kernel: &KernelSpec,
    quad: &LandauQuadrature,
) -> Result<f64> {
    let rule = &quad.momentum;
    let bracket = LandauBracket::from_statistics(kernel.model.statistics);
    let q = evaluate_ql_many(f, &rule.points, kernel, quad, bracket)?;
    Ok(q.iter()
        .zip(&rule.weights)
        .zip(&rule.points)
        .map(|((q, w), p)| q * w * phi(p))
        .sum())
}

/// Weak-form value and its absolute normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauWeak {
    pub value: f64,
    /// `1/2 int (|grad phi| + |grad phi*|) |kernel * projection| |field|`.
    pub scale: f64,
}

impl LandauWeak {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.value.abs()
        } else {
            self.value.abs() / self.scale
        }
    }
}

/// Sums `g(i, j, km_ij)` over all node pairs, in parallel over `i`.
fn pair_sum<const K: usize>(
    quad: &LandauQuadrature,
    kernel: &KernelSpec,
    g: impl Fn(usize, usize, &Mat3) -> [f64; K] + Sync,
) -> Result<[f64; K]> {
    let rule = &quad.momentum;
    let rows: Vec<[f64; K]> = (0..rule.len())
        .into_par_iter()
        .map(|i| {
            let mut acc = [0.0; K];
            for j in 0..rule.len() {
                if i == j {
                    continue;
                }
                let km = weighted_projection(&rule.points[i], &rule.points[j], kernel, quad.projection);
                let v = g(i, j, &km);
                for (a, x) in acc.iter_mut().zip(v) {
                    *a += rule.weights[j] * x;
                }
            }
            acc.map(|a| a * rule.weights[i])
        })
        .collect();
    let mut total = [0.0; K];
    for r in &rows {
        for (t, v) in total.iter_mut().zip(r) {
            *t += v;
        }
    }
    if total.iter().all(|v| v.is_finite()) {
        Ok(total)
    } else {
        Err(Error::Quadrature("Landau weak-form sum is not finite".into()))
    }
}

/// `<Q_L(f), phi> = -1/2 int kernel (grad phi - grad phi*) . projection field`.
pub fn landau_weak_form_bracket(
    f: &Distribution,
    grad_phi: GradFn,
    kernel: &KernelSpec,
    quad: &LandauQuadrature,
    bracket: LandauBracket,
) -> Result<LandauWeak> {
    let rule = &quad.momentum;
    let cache = NodeCache::new(f, rule);
    let gphi: Vec<Vec3> = rule.points.iter().map(grad_phi).collect();
    let [value, scale] = pair_sum(quad, kernel, |i, j, km| {
        let field = bracket.field(cache.f[i], cache.f[j], &cache.grad[i], &cache.grad[j]);
        [
            (gphi[i] - gphi[j]).dot(&(km * field)),
            (gphi[i].norm() + gphi[j].norm()) * km.norm() * field.norm(),
        ]
    })?;
    Ok(LandauWeak {
        value: -0.5 * value,
        scale: 0.5 * scale,
    })
}

/// Weak form for the statistics of the kernel model.
pub fn landau_weak_form(
    f: &Distribution,
    grad_phi: GradFn,
    kernel: &KernelSpec,
    quad: &LandauQuadrature,
) -> Result<LandauWeak> {
    landau_weak_form_bracket(
        f,
        grad_phi,
        kernel,
        quad,
        LandauBracket::from_statistics(kernel.model.statistics),
    )
}

/// `grad h'(f) = h''(f) grad f`; a non-finite value is a domain error.
pub fn entropy_gradient(f: &Distribution, p: &Vec3, statistics: Statistics) -> Result<Vec3> {
    let v = f.value(p);
    let g = f.gradient(p) * entropy_second(v, statistics);
    if g.iter().all(|x| x.is_finite()) {
        Ok(g)
    } else {
        Err(Error::Domain(format!(
            "grad h'(f) is not finite at p = ({}, {}, {}) where f = {v}",
            p.x, p.y, p.z
        )))
    }
}

/// Symmetric Onsager pairing `1/2 int kernel Theta_L (grad phi - grad phi*) . projection (grad psi - grad psi*)`.
pub fn landau_onsager(
    f: &Distribution,
    grad_phi: GradFn,
    grad_psi: GradFn,
    kernel: &KernelSpec,
    quad: &LandauQuadrature,
) -> Result<f64> {
    let pts = &quad.momentum.points;
    let a: Vec<Vec3> = pts.iter().map(grad_phi).collect();
    let b: Vec<Vec3> = pts.iter().map(grad_psi).collect();
    onsager_nodes(f, &a, &b, kernel, quad)
}

fn onsager_nodes(
    f: &Distribution,
    a: &[Vec3],
    b: &[Vec3],
    kernel: &KernelSpec,
    quad: &LandauQuadrature,
) -> Result<f64> {
    let stats = kernel.model.statistics;
    let fv: Vec<f64> = quad.momentum.points.iter().map(|p| f.value(p)).collect();
    let [v] = pair_sum(quad, kernel, |i, j, km| {
        let theta = theta_landau(fv[i], fv[j], stats);
        [theta * (a[i] - a[j]).dot(&(km * (b[i] - b[j])))]
    })?;
    Ok(0.5 * v)
}

/// `D_L(f) = 1/2 int kernel Theta_L |Landau gradient of h'(f)|^2`.
pub fn landau_dissipation(f: &Distribution, kernel: &KernelSpec, quad: &LandauQuadrature) -> Result<f64> {
    let stats = kernel.model.statistics;
    let grads = quad
        .momentum
        .points
        .iter()
        .map(|p| entropy_gradient(f, p, stats))
        .collect::<Result<Vec<_>>>()?;
    onsager_nodes(f, &grads, &grads, kernel, quad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use kinetica_core::{Family, ModelSpec};

    #[test]
    fn constant_is_annihilated_by_linear_operator() {
        let model = ModelSpec::classical(Statistics::Linear, 2).unwrap();
        let k = KernelSpec::default_for(model).unwrap();
        let q = LandauQuadrature::new(2, 4.0, 6).unwrap();
        let f = Distribution::analytic(Family::Constant { value: 0.7 }, &model).unwrap();
        assert_eq!(evaluate_ql(&f, &Vec3::new(0.3, 0.1, 0.0), &k, &q).unwrap(), 0.0);
    }
}
