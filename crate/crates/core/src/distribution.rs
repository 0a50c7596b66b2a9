//! Distribution functions: analytic families and gridded samples.

use std::f64::consts::PI;

use crate::{Error, ModelSpec, Result, Statistics, Vec3};

/// One Gaussian bump of a mixture, normalized to `weight` mass.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianComponent {
    pub weight: f64,
    pub center: Vec3,
    /// Temperature, so the variance per axis is `m t`.
    pub t: f64,
}

/// Analytic distribution families.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `rho (2 pi m T)^{-d/2} exp(-|p - u|^2 / (2 m T))`.
    Maxwellian { rho: f64, u: Vec3, t: f64 },
    /// `1 / (exp((e - mu)/T) - 1)`.
    BoseEinstein { mu: f64, t: f64 },
    /// `1 / (exp((e - mu)/T) + 1)`.
    FermiDirac { mu: f64, t: f64 },
    /// `T / (e + mu)`.
    RayleighJeans { mu: f64, t: f64 },
    /// `A exp(-(e - e_min)/T)`; with relativistic dynamics `e = c p0`.
    Juttner { amplitude: f64, t: f64 },
    /// Sum of Gaussians plus a constant background.
    GaussianMixture {
        components: Vec<GaussianComponent>,
        background: f64,
    },
    /// Constant value.
    Constant { value: f64 },
}

/// Samples on a uniform tensor grid over `[-L, L]^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridData {
    pub halfwidth: f64,
    /// Nodes per axis, endpoints included.
    pub nodes: usize,
    pub d: usize,
    /// Row-major values, first axis slowest.
    pub values: Vec<f64>,
}

impl GridData {
    /// Node spacing.
    pub fn spacing(&self) -> f64 {
        2.0 * self.halfwidth / (self.nodes - 1) as f64
    }

    fn at(&self, idx: &[usize; 3]) -> f64 {
        let n = self.nodes;
        let mut flat = 0;
        for i in idx.iter().take(self.d) {
            flat = flat * n + i;
        }
        self.values[flat]
    }

    /// Multilinear interpolation, zero outside the box.
    pub fn interpolate(&self, p: &Vec3) -> f64 {
        let h = self.spacing();
        let mut base = [0usize; 3];
        let mut frac = [0.0; 3];
        for a in 0..self.d {
            let x = (p[a] + self.halfwidth) / h;
            if !(x >= 0.0 && x <= (self.nodes - 1) as f64) {
                return 0.0;
            }
            let i = (x.floor() as usize).min(self.nodes - 2);
            base[a] = i;
            frac[a] = x - i as f64;
        }
        let corners = 1usize << self.d;
        let mut acc = 0.0;
        for c in 0..corners {
            let mut idx = [0usize; 3];
            let mut w = 1.0;
            for a in 0..self.d {
                let bit = (c >> a) & 1;
                idx[a] = base[a] + bit;
                w *= if bit == 1 { frac[a] } else { 1.0 - frac[a] };
            }
            if w != 0.0 {
                acc += w * self.at(&idx);
            }
        }
        acc
    }
}

/// A distribution function `f(p)` with value and gradient evaluators.
#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Analytic { family: Family, model: ModelSpec },
    Grid(GridData),
    /// `factor * base`, with `factor >= 0`.
    Scaled { base: Box<Distribution>, factor: f64 },
    /// `offset + factor * base`, the perturbation states of the linear limit.
    Perturbed { base: Box<Distribution>, offset: f64, factor: f64 },
}

fn check_positive(field: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Invalid {
            field,
            reason: format!("must be positive and finite, got {v}"),
        })
    }
}

fn gaussian_norm(m: f64, t: f64, d: usize) -> f64 {
    (2.0 * PI * m * t).powf(-(d as f64) / 2.0)
}

impl Distribution {
    /// Validated analytic distribution.
    pub fn analytic(family: Family, model: &ModelSpec) -> Result<Self> {
        let emin = model.min_energy();
        match &family {
            Family::Maxwellian { rho, t, .. } => {
                check_positive("t", *t)?;
                if !(*rho >= 0.0) {
                    return Err(Error::Invalid {
                        field: "rho",
                        reason: format!("density must be nonnegative, got {rho}"),
                    });
                }
            }
            Family::BoseEinstein { mu, t } => {
                check_positive("t", *t)?;
                if !(emin - mu > 0.0) {
                    return Err(Error::Construction(format!(
                        "Bose-Einstein pole: e(p) - mu vanishes for mu = {mu} >= min e = {emin}"
                    )));
                }
            }
            Family::FermiDirac { t, .. } => check_positive("t", *t)?,
            Family::RayleighJeans { mu, t } => {
                check_positive("t", *t)?;
                if !(emin + mu > 0.0) {
                    return Err(Error::Construction(format!(
                        "Rayleigh-Jeans pole: e(p) + mu vanishes for mu = {mu} <= -min e = {}",
                        -emin
                    )));
                }
            }
            Family::Juttner { amplitude, t } => {
                check_positive("t", *t)?;
                check_positive("amplitude", *amplitude)?;
            }
            Family::GaussianMixture {
                components,
                background,
            } => {
                if !(*background >= 0.0) {
                    return Err(Error::Invalid {
                        field: "background",
                        reason: format!("must be nonnegative, got {background}"),
                    });
                }
                for c in components {
                    check_positive("t", c.t)?;
                    if !(c.weight >= 0.0) {
                        return Err(Error::Invalid {
                            field: "weight",
                            reason: format!("must be nonnegative, got {}", c.weight),
                        });
                    }
                }
            }
            Family::Constant { value } => {
                if !(*value >= 0.0 && value.is_finite()) {
                    return Err(Error::Invalid {
                        field: "value",
                        reason: format!("must be nonnegative and finite, got {value}"),
                    });
                }
            }
        }
        let dist = Distribution::Analytic {
            family,
            model: *model,
        };
        if model.statistics == Statistics::FERMI {
            let sup = dist.upper_bound();
            if sup > 1.0 {
                return Err(Error::Construction(format!(
                    "Fermi statistics needs f <= 1, but sup f can reach {sup}"
                )));
            }
        }
        Ok(dist)
    }

    /// Gridded distribution; values must be finite and nonnegative.
    pub fn grid(halfwidth: f64, nodes: usize, d: usize, values: Vec<f64>) -> Result<Self> {
        check_positive("halfwidth", halfwidth)?;
        if nodes < 2 {
            return Err(Error::Invalid {
                field: "nodes",
                reason: "at least two nodes per axis".into(),
            });
        }
        if d != 2 && d != 3 {
            return Err(Error::Invalid {
                field: "d",
                reason: format!("dimension must be 2 or 3, got {d}"),
            });
        }
        if values.len() != nodes.pow(d as u32) {
            return Err(Error::Invalid {
                field: "values",
                reason: format!("expected {} samples, got {}", nodes.pow(d as u32), values.len()),
            });
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::Invalid {
                field: "values",
                reason: format!("grid values must be finite and nonnegative, found {v}"),
            });
        }
        Ok(Distribution::Grid(GridData {
            halfwidth,
            nodes,
            d,
            values,
        }))
    }

    /// Samples `source` onto a grid.
    pub fn sample_grid(source: &Distribution, halfwidth: f64, nodes: usize, d: usize) -> Result<Self> {
        let h = 2.0 * halfwidth / (nodes - 1) as f64;
        let total = nodes.pow(d as u32);
        let mut values = Vec::with_capacity(total);
        for flat in 0..total {
            let mut p = Vec3::zeros();
            let mut r = flat;
            for a in (0..d).rev() {
                p[a] = -halfwidth + (r % nodes) as f64 * h;
                r /= nodes;
            }
            values.push(source.value(&p));
        }
        Self::grid(halfwidth, nodes, d, values)
    }

    /// Crude supremum bound, used only for the Fermi admissibility check.
    fn upper_bound(&self) -> f64 {
        match self {
            Distribution::Analytic { family, model } => match family {
                Family::Maxwellian { rho, t, .. } => {
                    rho * gaussian_norm(model.constants.m, *t, model.d)
                }
                Family::GaussianMixture {
                    components,
                    background,
                } => {
                    background
                        + components
                            .iter()
                            .map(|c| c.weight * gaussian_norm(model.constants.m, c.t, model.d))
                            .sum::<f64>()
                }
                Family::FermiDirac { .. } => 1.0,
                Family::Juttner { amplitude, .. } => *amplitude,
                Family::Constant { value } => *value,
                Family::BoseEinstein { mu, t } => 1.0 / ((model.min_energy() - mu) / t).exp_m1(),
                Family::RayleighJeans { mu, t } => t / (model.min_energy() + mu),
            },
            Distribution::Grid(g) => g.values.iter().cloned().fold(0.0, f64::max),
            Distribution::Scaled { base, factor } => factor * base.upper_bound(),
            Distribution::Perturbed { base, offset, factor } => offset + factor.abs() * base.upper_bound(),
        }
    }

    /// `f(p)`.
    pub fn value(&self, p: &Vec3) -> f64 {
        match self {
            Distribution::Analytic { family, model } => analytic_value(family, model, p),
            Distribution::Grid(g) => g.interpolate(p),
            Distribution::Scaled { base, factor } => factor * base.value(p),
            Distribution::Perturbed { base, offset, factor } => offset + factor * base.value(p),
        }
    }

    /// `grad f(p)`: exact for analytic families, central differences on grids.
    pub fn gradient(&self, p: &Vec3) -> Vec3 {
        match self {
            Distribution::Analytic { family, model } => analytic_gradient(family, model, p),
            Distribution::Grid(g) => {
                let h = g.spacing();
                let mut out = Vec3::zeros();
                for a in 0..g.d {
                    let mut e = Vec3::zeros();
                    e[a] = h;
                    out[a] = (g.interpolate(&(p + e)) - g.interpolate(&(p - e))) / (2.0 * h);
                }
                out
            }
            Distribution::Scaled { base, factor } | Distribution::Perturbed { base, factor, .. } => {
                base.gradient(p) * *factor
            }
        }
    }

    /// Pointwise scaling `lambda f`, used by limit sweeps.
    pub fn scaled(&self, lambda: f64) -> Distribution {
        match self {
            Distribution::Scaled { base, factor } => Distribution::Scaled {
                base: base.clone(),
                factor: factor * lambda,
            },
            other => Distribution::Scaled {
                base: Box::new(other.clone()),
                factor: lambda,
            },
        }
    }

    /// `offset + epsilon f`, used by the linear limit.
    pub fn perturbed(&self, offset: f64, epsilon: f64) -> Distribution {
        Distribution::Perturbed {
            base: Box::new(self.clone()),
            offset,
            factor: epsilon,
        }
    }
}

fn analytic_value(family: &Family, model: &ModelSpec, p: &Vec3) -> f64 {
    let m = model.constants.m;
    match family {
        Family::Maxwellian { rho, u, t } => {
            let q = p - u;
            rho * gaussian_norm(m, *t, model.d) * (-q.norm_squared() / (2.0 * m * t)).exp()
        }
        Family::BoseEinstein { mu, t } => 1.0 / ((model.energy(p) - mu) / t).exp_m1(),
        Family::FermiDirac { mu, t } => 1.0 / (((model.energy(p) - mu) / t).exp() + 1.0),
        Family::RayleighJeans { mu, t } => t / (model.energy(p) + mu),
        Family::Juttner { amplitude, t } => {
            amplitude * (-(model.energy(p) - model.min_energy()) / t).exp()
        }
        Family::GaussianMixture {
            components,
            background,
        } => {
            background
                + components
                    .iter()
                    .map(|c| {
                        let q = p - c.center;
                        c.weight
                            * gaussian_norm(m, c.t, model.d)
                            * (-q.norm_squared() / (2.0 * m * c.t)).exp()
                    })
                    .sum::<f64>()
        }
        Family::Constant { value } => *value,
    }
}

fn analytic_gradient(family: &Family, model: &ModelSpec, p: &Vec3) -> Vec3 {
    let m = model.constants.m;
    // families depending on e(p) use df/de * grad e
    let through_energy = |dfde: f64| model.velocity(p) * dfde;
    match family {
        Family::Maxwellian { u, t, .. } => {
            let f = analytic_value(family, model, p);
            -(p - u) * (f / (m * t))
        }
        Family::BoseEinstein { t, .. } => {
            let f = analytic_value(family, model, p);
            through_energy(-f * (1.0 + f) / t)
        }
        Family::FermiDirac { t, .. } => {
            let f = analytic_value(family, model, p);
            through_energy(-f * (1.0 - f) / t)
        }
        Family::RayleighJeans { t, .. } => {
            let f = analytic_value(family, model, p);
            through_energy(-f * f / t)
        }
        Family::Juttner { t, .. } => {
            let f = analytic_value(family, model, p);
            through_energy(-f / t)
        }
        Family::GaussianMixture { components, .. } => {
            let mut g = Vec3::zeros();
            for c in components {
                let q = p - c.center;
                let v = c.weight
                    * gaussian_norm(m, c.t, model.d)
                    * (-q.norm_squared() / (2.0 * m * c.t)).exp();
                g -= q * (v / (m * c.t));
            }
            g
        }
        Family::Constant { .. } => Vec3::zeros(),
    }
}

/// Equilibrium distribution of the given family.
///
/// Only families whose `h'(f)` is affine in `(1, p, e)` for some statistics
/// are accepted.
pub fn equilibrium(family: Family, model: &ModelSpec) -> Result<Distribution> {
    if let Family::GaussianMixture { .. } = family {
        return Err(Error::Invalid {
            field: "family",
            reason: "a Gaussian mixture is not an equilibrium".into(),
        });
    }
    Distribution::analytic(family, model)
}
