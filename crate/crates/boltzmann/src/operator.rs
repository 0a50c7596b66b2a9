//! Two-body collision operators: strong form, weak forms, entropy
//! dissipation and the generalized dissipation derivative.
//!
//! Every outer loop runs in parallel over momentum nodes, collects the
//! per-node results in order and sums them sequentially, so the output does
//! not depend on the number of threads.

use kinetica_core::{
    entropy_prime, node_rng, psi_star_prime, Distribution, Error, Result, Statistics, Vec3,
};
use kinetica_kernels::KernelSpec;
use rayon::prelude::*;

use crate::compat::WeightTriple;
use crate::quadrature::{for_each_event, QuadratureSpec, Sampling};
use crate::rows::quantum_bracket;

/// Clipping distance from the Fermi domain boundary: the smallest that keeps
/// `log(f / (1 - f))` finite without biasing tails that are merely small.
pub const FERMI_CLIP: f64 = f64::MIN_POSITIVE;
const FERMI_TOP: f64 = 1.0 - f64::EPSILON;

/// The two-body gain-minus-loss bracket, with a real quantum parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bracket {
    Quantum(f64),
    Wave,
    Linear,
}

impl Bracket {
    pub fn from_statistics(statistics: Statistics) -> Self {
        match statistics {
            Statistics::Quantum { alpha } => Bracket::Quantum(alpha as f64),
            Statistics::Wave => Bracket::Wave,
            Statistics::Linear => Bracket::Linear,
        }
    }

    #[inline]
    pub fn eval(&self, f: f64, fs: f64, fp: f64, fsp: f64) -> f64 {
        match *self {
            Bracket::Quantum(a) => quantum_bracket(a, f, fs, fp, fsp),
            Bracket::Wave => fp * fsp * (f + fs) - f * fs * (fp + fsp),
            Bracket::Linear => fp + fsp - f - fs,
        }
    }
}

/// A quadrature estimate with its Monte Carlo standard error (0 when deterministic).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

/// Weak-form value and the absolute integral used to normalize it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakForm {
    pub value: f64,
    /// `1/4 int B |W| (|phi'| + |phi*'| + |phi| + |phi*|)`.
    pub scale: f64,
    /// Monte Carlo standard error of `value`; 0 when deterministic.
    pub std_error: f64,
}

impl WeakForm {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.value.abs()
        } else {
            self.value.abs() / self.scale
        }
    }
}

/// Test function accepted by the weak forms.
pub type TestFn<'a> = &'a (dyn Fn(&Vec3) -> f64 + Sync);

/// Monte Carlo stream derived from the output momentum, independent of scheduling.
fn point_stream(p: &Vec3) -> u64 {
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15;
    for x in p.iter() {
        h ^= x.to_bits();
        h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h ^= h >> 31;
    }
    h
}

/// Clips Fermi values into the open domain before `h'` is taken.
#[inline]
pub fn clip_for_entropy(f: f64, statistics: Statistics) -> f64 {
    if statistics == Statistics::FERMI {
        f.clamp(FERMI_CLIP, FERMI_TOP)
    } else {
        f
    }
}

/// `h'(f(p))` with clipping; a non-finite value is a domain error naming `p`.
pub fn entropy_variable(f: f64, p: &Vec3, statistics: Statistics) -> Result<f64> {
    let v = entropy_prime(clip_for_entropy(f, statistics), statistics);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!(
            "h'(f) is not finite at p = ({}, {}, {}) where f = {f}",
            p.x, p.y, p.z
        )))
    }
}

/// Sum of `w B W` over the directions of one pair.
fn pair_q(
    f: &Distribution,
    kernel: &KernelSpec,
    quad: &QuadratureSpec,
    bracket: Bracket,
    p: &Vec3,
    fp0: f64,
    ps: &Vec3,
    fs0: f64,
) -> Result<f64> {
    let mut acc = 0.0;
    for_each_event(kernel, &quad.angular, p, ps, |pp, psp, w| {
        acc += w * bracket.eval(fp0, fs0, f.value(pp), f.value(psp));
    });
    if acc.is_finite() {
        Ok(acc)
    } else {
        Err(Error::poisoned(p, ps, "collision bracket is not finite"))
    }
}

/// `Q(f)(p)` with an explicit bracket, returning the standard error too.
pub fn evaluate_q_bracket(
    f: &Distribution,
    p: &Vec3,
    kernel: &KernelSpec,
    quad: &QuadratureSpec,
    bracket: Bracket,
) -> Result<Estimate> {
    let fp0 = f.value(p);
    match quad.sampling {
        Sampling::Deterministic => {
            let rule = &quad.momentum;
            let mut value = 0.0;
            for (ps, ws) in rule.points.iter().zip(&rule.weights) {
                value += ws * pair_q(f, kernel, quad, bracket, p, fp0, ps, f.value(ps))?;
            }
            Ok(Estimate {
                value,
                std_error: 0.0,
            })
        }
        Sampling::MonteCarlo { samples, seed } => {
            let mut rng = node_rng(seed, point_stream(p));
            let vol = quad.momentum.volume();
            let (mut sum, mut sum2) = (0.0, 0.0);
            for _ in 0..samples {
                let ps = quad.sample_point(&mut rng);
                let v = vol * pair_q(f, kernel, quad, bracket, p, fp0, &ps, f.value(&ps))?;
                sum += v;
                sum2 += v * v;
            }
            let n = samples as f64;
            let mean = sum / n;
            let var = if samples > 1 {
                ((sum2 - n * mean * mean) / (n - 1.0)).max(0.0)
            } else {
                0.0
            };
            Ok(Estimate {
                value: mean,
                std_error: (var / n).sqrt(),
            })
        }
    }
}

/// `Q(f)(p) = int B W d omega dp*` for the statistics of the kernel model.
pub fn evaluate_q(f: &Distribution, p: &Vec3, kernel: &KernelSpec, quad: &QuadratureSpec) -> Result<f64> {
    Ok(evaluate_q_estimate(f, p, kernel, quad)?.value)
}

/// As [`evaluate_q`], with the Monte Carlo standard error.
pub fn evaluate_q_estimate(
    f: &Distribution,
    p: &Vec3,
    kernel: &KernelSpec,
    quad: &QuadratureSpec,
) -> Result<Estimate> {
    evaluate_q_bracket(f, p, kernel, quad, Bracket::from_statistics(kernel.model.statistics))
}

/// `Q(f)` at many points, in parallel.
pub fn evaluate_q_many(
    f: &Distribution,
    points: &[Vec3],
    kernel: &KernelSpec,
    quad: &QuadratureSpec,
    bracket: Bracket,
) -> Result<Vec<f64>> {
    points
        .par_iter()
        .map(|p| evaluate_q_bracket(f, p, kernel, quad, bracket).map(|e| e.value))
        .collect()
}

/// Visits every `(p*, weight)` of the inner integral for output node `p`.
fn for_each_partner(
    quad: &QuadratureSpec,
    p: &Vec3,
    mut visit: impl FnMut(Option<usize>, &Vec3, f64) -> Result<()>,
) -> Result<()> {
    match quad.sampling {
        Sampling::Deterministic => {
            for (j, (ps, ws)) in quad.momentum.points.iter().zip(&quad.momentum.weights).enumerate() {
                visit(Some(j), ps, *ws)?;
            }
        }
        Sampling::MonteCarlo { samples, seed } => {
            let mut rng = node_rng(seed, point_stream(p));
            let w = quad.momentum.volume() / samples as f64;
            for _ in 0..samples {
                let ps = quad.sample_point(&mut rng);
                visit(None, &ps, w)?;
            }
        }
    }
    Ok(())
}

/// Symmetrized weak forms `-1/4 int B W grad(phi)` for several test functions in one pass.
pub fn weak_forms_bracket(
    f: &Distribution,
    phis: &[TestFn],
    kernel: &KernelSpec,
    quad: &QuadratureSpec,
    bracket: Bracket,
) -> Result<Vec<WeakForm>> {
    let m = phis.len();
    let rule = &quad.momentum;
    let f_nodes: Vec<f64> = rule.points.iter().map(|p| f.value(p)).collect();
    let phi_nodes: Vec<Vec<f64>> = rule
        .points
        .iter()
        .map(|p| phis.iter().map(|phi| phi(p)).collect())
        .collect();
    let per_node: Vec<Vec<f64>> = (0..rule.len())
        .into_par_iter()
        .map(|i| {
            let p = &rule.points[i];
            let fp0 = f_nodes[i];
            let mut acc = vec![0.0; 2 * m];
            let mut sq = vec![0.0; m];
            let mut post = vec![0.0; 2 * m];
            let mut star = vec![0.0; m];
            for_each_partner(quad, p, |j, ps, ws| {
                let fs0 = match j {
                    Some(j) => {
                        star.copy_from_slice(&phi_nodes[j]);
                        f_nodes[j]
                    }
                    None => {
                        for (s, phi) in star.iter_mut().zip(phis) {
                            *s = phi(ps);
                        }
                        f.value(ps)
                    }
                };
                post.iter_mut().for_each(|x| *x = 0.0);
                for_each_event(kernel, &quad.angular, p, ps, |pp, psp, w| {
                    let bw = w * bracket.eval(fp0, fs0, f.value(pp), f.value(psp));
                    for (k, phi) in phis.iter().enumerate() {
                        let (a, b) = (phi(pp), phi(psp));
                        let (c, d) = (phi_nodes[i][k], star[k]);
                        post[k] += bw * ((a + b) - (c + d));
                        post[m + k] += bw.abs() * (a.abs() + b.abs() + c.abs() + d.abs());
                    }
                });
                for (a, v) in acc.iter_mut().zip(&post) {
                    *a += ws * v;
                }
                for (q, v) in sq.iter_mut().zip(&post) {
                    *q += (ws * v) * (ws * v);
                }
                if post.iter().all(|v| v.is_finite()) {
                    Ok(())
                } else {
                    Err(Error::poisoned(p, ps, "weak-form integrand is not finite"))
                }
            })?;
            let wi = rule.weights[i];
            // variance of the node mean from the per-sample terms `ws * post`
            let var: Vec<f64> = match quad.sampling {
                Sampling::Deterministic => vec![0.0; m],
                Sampling::MonteCarlo { samples, .. } if samples > 1 => {
                    let n = samples as f64;
                    (0..m)
                        .map(|k| ((n * sq[k] - acc[k] * acc[k]) / (n - 1.0)).max(0.0) * wi * wi)
                        .collect()
                }
                Sampling::MonteCarlo { .. } => vec![0.0; m],
            };
            Ok(acc.into_iter().map(|v| v * wi).chain(var).collect())
        })
        .collect::<Result<_>>()?;
    let mut total = vec![0.0; 3 * m];
    for node in &per_node {
        for (t, v) in total.iter_mut().zip(node) {
            *t += v;
        }
    }
    Ok((0..m)
        .map(|k| WeakForm {
            value: -0.25 * total[k],
            scale: 0.25 * total[m + k],
            std_error: 0.25 * total[2 * m + k].sqrt(),
        })
        .collect())
}

/// Weak forms for the statistics of the kernel model.
pub fn weak_forms(
    f: &Distribution,
    phis: &[TestFn],
    kernel: &KernelSpec,
    quad: &QuadratureSpec,
) -> Result<Vec<WeakForm>> {
    weak_forms_bracket(f, phis, kernel, quad, Bracket::from_statistics(kernel.model.statistics))
}

/// `<Q(f), phi>` in symmetrized form.
pub fn weak_form(f: &Distribution, phi: TestFn, kernel: &KernelSpec, quad: &QuadratureSpec) -> Result<f64> {
    Ok(weak_forms(f, &[phi], kernel, quad)?[0].value)
}

/// `<Q(f), h'(f)>` in symmetrized form, with the entropy variable clipped as in the dissipation.
pub fn entropy_pairing(f: &Distribution, kernel: &KernelSpec, quad: &QuadratureSpec) -> Result<f64> {
    let stats = kernel.model.statistics;
    check_entropy_domain(f, quad, stats)?;
    let h = move |p: &Vec3| entropy_prime(clip_for_entropy(f.value(p), stats), stats);
    weak_form(f, &h, kernel, quad)
}

fn check_entropy_domain(f: &Distribution, quad: &QuadratureSpec, stats: Statistics) -> Result<()> {
    for p in &quad.momentum.points {
        entropy_variable(f.value(p), p, stats)?;
    }
    Ok(())
}

/// `int Q(f)(p) phi(p) dp` from the strong form on the box nodes.
pub fn strong_pairing(f: &Distribution, phi: TestFn, kernel: &KernelSpec, quad: &QuadratureSpec) -> Result<f64> {
    let rule = &quad.momentum;
    let bracket = Bracket::from_statistics(kernel.model.statistics);
    let q = evaluate_q_many(f, &rule.points, kernel, quad, bracket)?;
    Ok(q.iter()
        .zip(&rule.weights)
        .zip(&rule.points)
        .map(|((q, w), p)| q * w * phi(p))
        .sum())
}

/// Entropy dissipation `1/4 int B grad(h') (Psi*)'(grad h') Theta` with the
/// weight triple of the model statistics.
pub fn entropy_dissipation(f: &Distribution, kernel: &KernelSpec, quad: &QuadratureSpec) -> Result<f64> {
    entropy_dissipation_with(f, kernel, quad, &WeightTriple::for_statistics(kernel.model.statistics))
}

/// Entropy dissipation for an explicit weight triple.
pub fn entropy_dissipation_with(
    f: &Distribution,
    kernel: &KernelSpec,
    quad: &QuadratureSpec,
    triple: &WeightTriple,
) -> Result<f64> {
    let stats = triple.statistics;
    check_entropy_domain(f, quad, stats)?;
    let rule = &quad.momentum;
    let clip = |v: f64| clip_for_entropy(v, stats);
    let f_nodes: Vec<f64> = rule.points.iter().map(|p| f.value(p)).collect();
    let per_node: Vec<f64> = (0..rule.len())
        .into_par_iter()
        .map(|i| {
            let p = &rule.points[i];
            let fp0 = f_nodes[i];
            let mut acc = 0.0;
            let mut err = None;
            for_each_partner(quad, p, |j, ps, ws| {
                let fs0 = match j {
                    Some(j) => f_nodes[j],
                    None => f.value(ps),
                };
                let mut pair = 0.0;
                for_each_event(kernel, &quad.angular, p, ps, |pp, psp, w| {
                    let t = [fp0, fs0, f.value(pp), f.value(psp)];
                    let r = triple.free_gradient(&t.map(clip));
                    match triple.theta.eval(&t) {
                        Ok(theta) => pair += w * r * psi_star_prime(r, triple.psi) * theta,
                        Err(e) => err = Some(e),
                    }
                });
                if let Some(e) = err.take() {
                    return Err(e);
                }
                if !pair.is_finite() {
                    return Err(Error::poisoned(p, ps, "dissipation integrand is not finite"));
                }
                acc += ws * pair;
                Ok(())
            })?;
            Ok(acc * rule.weights[i])
        })
        .collect::<Result<_>>()?;
    Ok(0.25 * per_node.iter().sum::<f64>())
}

/// Evaluator `p -> 1/(2n) div(B Theta(f) (Psi*)'(grad xi))` for `n = 2`.
///
/// The divergence sums the four orderings `(p, p*, p', p*')`,
/// `(p*, p, p*', p')`, minus `(p', p*', p, p*)` and `(p*', p', p*, p)`,
/// all integrated against the same reduced kernel measure.
pub struct DissipationDerivative<'a> {
    f: &'a Distribution,
    xi: TestFn<'a>,
    kernel: &'a KernelSpec,
    quad: &'a QuadratureSpec,
    triple: WeightTriple,
}

/// Builds the generalized dissipation derivative evaluator.
pub fn generalized_dissipation_derivative<'a>(
    f: &'a Distribution,
    xi: TestFn<'a>,
    kernel: &'a KernelSpec,
    quad: &'a QuadratureSpec,
    triple: WeightTriple,
) -> DissipationDerivative<'a> {
    DissipationDerivative {
        f,
        xi,
        kernel,
        quad,
        triple,
    }
}

impl DissipationDerivative<'_> {
    fn ordering(&self, fs: [f64; 4], xs: [f64; 4]) -> Result<f64> {
        let r = (xs[2] + xs[3]) - (xs[0] + xs[1]);
        // a gradient below the rounding level of its terms is a collision invariant
        let size: f64 = xs.iter().map(|x| x.abs()).sum();
        if r.abs() <= 8.0 * f64::EPSILON * size {
            return Ok(0.0);
        }
        Ok(self.triple.theta.eval(&fs)? * psi_star_prime(r, self.triple.psi))
    }

    pub fn eval(&self, p: &Vec3) -> Result<f64> {
        let (f0, x0) = (self.f.value(p), (self.xi)(p));
        let mut total = 0.0;
        let mut err = None;
        for_each_partner(self.quad, p, |_, ps, ws| {
            let (f1, x1) = (self.f.value(ps), (self.xi)(ps));
            let mut pair = 0.0;
            for_each_event(self.kernel, &self.quad.angular, p, ps, |pp, psp, w| {
                let (f2, x2) = (self.f.value(pp), (self.xi)(pp));
                let (f3, x3) = (self.f.value(psp), (self.xi)(psp));
                let terms = [
                    self.ordering([f0, f1, f2, f3], [x0, x1, x2, x3]),
                    self.ordering([f1, f0, f3, f2], [x1, x0, x3, x2]),
                    self.ordering([f2, f3, f0, f1], [x2, x3, x0, x1]),
                    self.ordering([f3, f2, f1, f0], [x3, x2, x1, x0]),
                ];
                match terms {
                    [Ok(a), Ok(b), Ok(c), Ok(d)] => pair += w * ((a + b) - (c + d)),
                    _ => err = terms.into_iter().find_map(|t| t.err()),
                }
            });
            if let Some(e) = err.take() {
                return Err(e);
            }
            if !pair.is_finite() {
                return Err(Error::poisoned(p, ps, "divergence integrand is not finite"));
            }
            total += ws * pair;
            Ok(())
        })?;
        Ok(total / 4.0)
    }

    pub fn eval_many(&self, points: &[Vec3]) -> Result<Vec<f64>> {
        points.par_iter().map(|p| self.eval(p)).collect()
    }
}
