//! Grazing limit: pointwise small-angle expansion and the weak-form sweep
//! from Boltzmann-type to Landau-type operators.

use std::f64::consts::PI;

use kinetica_boltzmann::{weak_forms, QuadratureSpec, Sampling};
use kinetica_core::{BoxRule, Distribution, Dynamics, Error, Mat3, ModelSpec, Result, Vec3};
use kinetica_kernels::{orthonormal_complement, rescale_angular, sphere_measure, AngularRule, KernelSpec};
use kinetica_kinematics::{landau_projection_scaled, lorentz_frame, relativistic_projection_scaled};
use kinetica_landau::{landau_weak_form, LandauQuadrature};

use crate::report::SweepReport;
use crate::testfn::GaussianTest;

/// `kappa(f) = a + alpha f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kappa {
    pub a: f64,
    pub alpha: f64,
}

impl Kappa {
    pub fn new(a: f64, alpha: f64) -> Self {
        Self { a, alpha }
    }

    pub fn eval(&self, f: f64) -> f64 {
        self.a + self.alpha * f
    }
}

/// Nodes of the unit sphere orthogonal to `k` with their weights: the two
/// points `±k^perp` in 2D, a uniform circle rule in 3D.
fn orthogonal_sphere(k: &Vec3, d: usize, circle: usize) -> Vec<(Vec3, f64)> {
    let (e1, e2) = orthonormal_complement(k, d);
    if d == 2 {
        return vec![(e1, 1.0), (-e1, 1.0)];
    }
    let w = 2.0 * PI / circle as f64;
    (0..circle)
        .map(|j| {
            let a = 2.0 * PI * (j as f64 + 0.5) / circle as f64;
            (e1 * a.cos() + e2 * a.sin(), w)
        })
        .collect()
}

/// Collision direction `k` and the map `omega -> (p', p*')`.
fn pair_geometry(p: &Vec3, pstar: &Vec3, model: &ModelSpec) -> Result<(Vec3, Box<dyn Fn(&Vec3) -> (Vec3, Vec3)>)> {
    match model.dynamics {
        Dynamics::Classical => {
            let u = p - pstar;
            let r = u.norm();
            if r == 0.0 {
                return Err(Error::SingularPair);
            }
            let mid = (p + pstar) * 0.5;
            Ok((u / r, Box::new(move |w: &Vec3| (mid + w * (0.5 * r), mid - w * (0.5 * r)))))
        }
        Dynamics::Relativistic => {
            let frame = lorentz_frame(p, pstar, &model.constants);
            let k = frame.k_hat.ok_or(Error::SingularPair)?;
            let (p, pstar) = (*p, *pstar);
            Ok((
                k,
                Box::new(move |w: &Vec3| {
                    let out = frame.outgoing(&p, &pstar, w);
                    (out.p, out.pstar)
                }),
            ))
        }
    }
}

/// `|p - p*|^2 Pi` or `g^2 S`.
fn landau_matrix(p: &Vec3, pstar: &Vec3, model: &ModelSpec) -> Mat3 {
    match model.dynamics {
        Dynamics::Classical => landau_projection_scaled(p, pstar, model.d),
        Dynamics::Relativistic => relativistic_projection_scaled(p, pstar, &model.constants, model.d),
    }
}

/// `int_{S^{d-2}_{k perp}} kappa(f') kappa(f*') grad(phi)` at deviation angle `theta`.
pub fn grazing_lemma_lhs(
    kappa: Kappa,
    f: &Distribution,
    phi: &GaussianTest,
    p: &Vec3,
    pstar: &Vec3,
    theta: f64,
    model: &ModelSpec,
) -> Result<f64> {
    let (k, outgoing) = pair_geometry(p, pstar, model)?;
    let base = phi.value(p) + phi.value(pstar);
    let mut total = 0.0;
    for (e, w) in orthogonal_sphere(&k, model.d, 64) {
        let omega = k * theta.cos() + e * theta.sin();
        let (pp, psp) = outgoing(&omega);
        let weight = kappa.eval(f.value(&pp)) * kappa.eval(f.value(&psp));
        total += w * weight * (phi.value(&pp) + phi.value(&psp) - base);
    }
    Ok(total)
}

/// Leading coefficient `C` of `LHS = C theta^2 + O(theta^4)`:
/// `|S^{d-2}| / (8 (d-1)) [2 grad(kappa kappa*) . M v + kappa kappa* div(M v)]`
/// with `M = |p - p*|^2 Pi` (classical) or `g^2 S` (relativistic), `v = grad phi - grad phi*`
/// and `grad = grad_p - grad_{p*}`. In the relativistic case the divergence is
/// taken against the invariant measure: `p0 p0* div((p0 p0*)^{-1} M v)`.
pub fn grazing_lemma_coefficient(
    kappa: Kappa,
    f: &Distribution,
    phi: &GaussianTest,
    p: &Vec3,
    pstar: &Vec3,
    model: &ModelSpec,
) -> f64 {
    let d = model.d;
    let (fp, fs) = (f.value(p), f.value(pstar));
    let kk = kappa.eval(fp) * kappa.eval(fs);
    let grad_kk = f.gradient(p) * (kappa.alpha * kappa.eval(fs)) - f.gradient(pstar) * (kappa.alpha * kappa.eval(fp));
    let weight = |x: &Vec3, y: &Vec3| match model.dynamics {
        Dynamics::Classical => 1.0,
        Dynamics::Relativistic => 1.0 / (model.p0(x) * model.p0(y)),
    };
    let field =
        |x: &Vec3, y: &Vec3| landau_matrix(x, y, model) * (phi.gradient(x) - phi.gradient(y)) * weight(x, y);
    let v = field(p, pstar) / weight(p, pstar);
    // fourth-order central differences of the divergence in p and in p*
    let h = 1e-3;
    let mut div = 0.0;
    for a in 0..d {
        let mut e = Vec3::zeros();
        e[a] = h;
        let dp = |s: f64| field(&(p + e * s), pstar)[a];
        let ds = |s: f64| field(p, &(pstar + e * s))[a];
        div += (8.0 * (dp(1.0) - dp(-1.0)) - (dp(2.0) - dp(-2.0))) / (12.0 * h);
        div -= (8.0 * (ds(1.0) - ds(-1.0)) - (ds(2.0) - ds(-2.0))) / (12.0 * h);
    }
    sphere_measure(d) / (8.0 * (d as f64 - 1.0)) * (2.0 * grad_kk.dot(&v) + kk * div / weight(p, pstar))
}

/// Pointwise lemma check: `theta^{-2} LHS(theta)` against its limit, with
/// error `|ratio - 1|` (absolute when the limit vanishes).
pub fn grazing_lemma_pointwise(
    kappa: Kappa,
    f: &Distribution,
    phi: &GaussianTest,
    p: &Vec3,
    pstar: &Vec3,
    thetas: &[f64],
    model: &ModelSpec,
) -> Result<SweepReport> {
    if thetas.windows(2).any(|t| t[1] >= t[0]) {
        return Err(Error::Invalid {
            field: "theta_list",
            reason: "angles must be strictly decreasing".into(),
        });
    }
    let c = grazing_lemma_coefficient(kappa, f, phi, p, pstar, model);
    let errors = thetas
        .iter()
        .map(|&t| {
            let lhs = grazing_lemma_lhs(kappa, f, phi, p, pstar, t, model)? / (t * t);
            Ok(if c == 0.0 { lhs.abs() } else { (lhs / c - 1.0).abs() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport::new("theta", thetas.to_vec(), errors, 1.8, 1e-14))
}

/// Quadrature of a grazing sweep: one box rule for every `epsilon`, with
/// the polar panels laid over the rescaled support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrazingSetup {
    pub halfwidth: f64,
    pub nodes: usize,
    /// Box nodes per axis of the Landau reference; `nodes` when equal.
    pub landau_nodes: usize,
    pub panels: usize,
    pub per_panel: usize,
    pub circle: usize,
    pub sampling: Sampling,
}

impl GrazingSetup {
    /// Deterministic 2D budget.
    pub fn deterministic(halfwidth: f64, nodes: usize) -> Self {
        Self {
            halfwidth,
            nodes,
            landau_nodes: nodes,
            panels: 4,
            per_panel: 8,
            circle: 16,
            sampling: Sampling::Deterministic,
        }
    }

    fn boltzmann(&self, kernel: &KernelSpec, panels: usize) -> Result<QuadratureSpec> {
        QuadratureSpec::new(
            BoxRule::gauss_legendre(kernel.model.d, self.halfwidth, self.nodes)?,
            AngularRule::new(&kernel.angular, panels, self.per_panel, self.circle)?,
            self.sampling,
        )
    }
}

/// `<Q_eps(f), phi>` with the rescaled angular profile, and its standard error.
pub fn grazing_boltzmann_weak_form(
    f: &Distribution,
    phi: &GaussianTest,
    kernel: &KernelSpec,
    setup: &GrazingSetup,
    epsilon: f64,
    panels: usize,
) -> Result<(f64, f64)> {
    let scaled = (*kernel).with_angular(rescale_angular(&kernel.angular, epsilon)?);
    let quad = setup.boltzmann(&scaled, panels)?;
    let value = |p: &Vec3| phi.value(p);
    let w = weak_forms(f, &[&value], &scaled, &quad)?;
    Ok((w[0].value, w[0].std_error))
}

/// `<Q_L(f), phi>` on the box of the setup.
pub fn grazing_landau_weak_form(
    f: &Distribution,
    phi: &GaussianTest,
    kernel: &KernelSpec,
    setup: &GrazingSetup,
) -> Result<f64> {
    let quad = LandauQuadrature::new(kernel.model.d, setup.halfwidth, setup.landau_nodes)?;
    let grad = |p: &Vec3| phi.gradient(p);
    Ok(landau_weak_form(f, &grad, kernel, &quad)?.value)
}

/// Weak-form sweep `|<Q_eps(f), phi> - <Q_L(f), phi>|` over decreasing `epsilon`.
///
/// The floor is the change at the smallest `epsilon` when the polar panels
/// are doubled.
pub fn grazing_sweep(
    f: &Distribution,
    phi: &GaussianTest,
    kernel: &KernelSpec,
    setup: &GrazingSetup,
    eps_list: &[f64],
) -> Result<SweepReport> {
    if eps_list.is_empty() || eps_list.windows(2).any(|e| e[1] >= e[0]) {
        return Err(Error::Invalid {
            field: "eps_list",
            reason: "epsilon values must be strictly decreasing".into(),
        });
    }
    let landau = grazing_landau_weak_form(f, phi, kernel, setup)?;
    let mut errors = Vec::with_capacity(eps_list.len());
    let mut std_errors = Vec::with_capacity(eps_list.len());
    let mut last = 0.0;
    for &eps in eps_list {
        let (b, se) = grazing_boltzmann_weak_form(f, phi, kernel, setup, eps, setup.panels)
            .map_err(|e| Error::Quadrature(format!("grazing sweep failed at epsilon = {eps}: {e}")))?;
        errors.push((b - landau).abs());
        std_errors.push(se);
        last = b;
    }
    let eps_min = *eps_list.last().expect("non-empty");
    let (refined, _) = grazing_boltzmann_weak_form(f, phi, kernel, setup, eps_min, 2 * setup.panels)?;
    let mut report = SweepReport::new("epsilon", eps_list.to_vec(), errors, 0.8, 0.0)
        .with_floor((refined - last).abs())
        .with_std_errors(std_errors);
    if let Sampling::MonteCarlo { seed, .. } = setup.sampling {
        report = report.with_seed(seed);
    }
    Ok(report)
}

/// Monte Carlo spot-check of the grazing limit at one `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpotCheck {
    pub epsilon: f64,
    pub boltzmann: f64,
    pub std_error: f64,
    pub landau: f64,
    pub pass: bool,
}

/// Compares a Monte Carlo Boltzmann weak form with the deterministic Landau
/// weak form; passes when they agree within three standard errors.
pub fn grazing_spot_check(
    f: &Distribution,
    phi: &GaussianTest,
    kernel: &KernelSpec,
    setup: &GrazingSetup,
    epsilon: f64,
) -> Result<SpotCheck> {
    let (boltzmann, std_error) = grazing_boltzmann_weak_form(f, phi, kernel, setup, epsilon, setup.panels)?;
    let landau = grazing_landau_weak_form(f, phi, kernel, setup)?;
    Ok(SpotCheck {
        epsilon,
        boltzmann,
        std_error,
        landau,
        pass: (boltzmann - landau).abs() <= 3.0 * std_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use kinetica_core::{bimodal, Statistics};

    #[test]
    fn degenerate_kappa_gives_zero() {
        let model = ModelSpec::classical(Statistics::MAXWELL, 2).unwrap();
        let f = bimodal(&model).unwrap();
        let r = grazing_lemma_pointwise(
            Kappa::new(0.0, 0.0),
            &f,
            &GaussianTest::default(),
            &Vec3::new(0.3, 0.1, 0.0),
            &Vec3::new(-0.5, 0.7, 0.0),
            &[0.2, 0.1],
            &model,
        )
        .unwrap();
        assert!(r.errors.iter().all(|e| *e == 0.0) && r.pass);
    }
}
