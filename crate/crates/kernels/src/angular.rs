//! Angular collision profiles and the polar quadrature about `k_hat`.
//!
//! Directions are parametrized as `omega = cos(theta) k + sin(theta) e` with
//! `e` on the unit sphere of `k`'s orthogonal complement, so that
//! `int b(theta) G d omega = int beta(theta) d theta int G de` where
//! `beta = sin^{d-2} b`.

use std::f64::consts::{FRAC_PI_2, PI};

use kinetica_core::{gauss_legendre_interval, Error, Result, Vec3};

/// Unnormalized shape of the angular profile on `[0, pi/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngularFamily {
    /// `beta = theta^{-1-nu}` on `[theta0, pi/2]`.
    PowerLaw { nu: f64, theta0: f64 },
    /// `b = 1`, hence `beta = sin^{d-2}(theta)`.
    Constant,
    /// Smooth bump `beta = sin^2(2 theta)`.
    Bump,
}

/// Angular profile `beta(theta) = K beta_raw(theta)`, optionally rescaled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularProfile {
    pub family: AngularFamily,
    pub d: usize,
    /// Multiplicative normalization `K`.
    pub scale: f64,
    /// Grazing parameter; `pi` leaves the profile unchanged.
    pub epsilon: f64,
}

/// `|S^{d-2}|`, with `|S^0| = 2`.
pub fn sphere_measure(d: usize) -> f64 {
    match d {
        2 => 2.0,
        _ => 2.0 * PI,
    }
}

/// Target value of `int beta theta^2 d theta`: `8 (d-1) / |S^{d-2}|`.
pub fn normalization_target(d: usize) -> f64 {
    8.0 * (d as f64 - 1.0) / sphere_measure(d)
}

impl AngularProfile {
    /// Unscaled profile with `K = 1` and `epsilon = pi`.
    pub fn new(family: AngularFamily, d: usize) -> Result<Self> {
        if d != 2 && d != 3 {
            return Err(Error::Invalid {
                field: "d",
                reason: format!("dimension must be 2 or 3, got {d}"),
            });
        }
        if let AngularFamily::PowerLaw { nu, theta0 } = family {
            if !(nu > 0.0 && nu < 2.0) {
                return Err(Error::Invalid {
                    field: "nu",
                    reason: format!("singularity strength must lie in (0, 2), got {nu}"),
                });
            }
            if !(theta0 > 0.0 && theta0 < FRAC_PI_2) {
                return Err(Error::Invalid {
                    field: "theta0",
                    reason: format!("cutoff must lie in (0, pi/2), got {theta0}"),
                });
            }
        }
        Ok(Self {
            family,
            d,
            scale: 1.0,
            epsilon: PI,
        })
    }

    /// Default profile: normalized power law with `nu = 1`, `theta0 = 1e-3`.
    pub fn default_for(d: usize) -> Result<Self> {
        angular_normalize(&Self::new(
            AngularFamily::PowerLaw {
                nu: 1.0,
                theta0: 1e-3,
            },
            d,
        )?)
    }

    fn raw_beta(&self, x: f64) -> f64 {
        if !(0.0..=FRAC_PI_2).contains(&x) {
            return 0.0;
        }
        match self.family {
            AngularFamily::PowerLaw { nu, theta0 } => {
                if x < theta0 {
                    0.0
                } else {
                    x.powf(-1.0 - nu)
                }
            }
            AngularFamily::Constant => {
                if self.d == 2 {
                    1.0
                } else {
                    x.sin()
                }
            }
            AngularFamily::Bump => {
                let s = (2.0 * x).sin();
                s * s
            }
        }
    }

    /// Support of the unscaled profile.
    fn raw_support(&self) -> (f64, f64) {
        match self.family {
            AngularFamily::PowerLaw { theta0, .. } => (theta0, FRAC_PI_2),
            _ => (0.0, FRAC_PI_2),
        }
    }

    /// `beta(theta)`, including normalization and grazing rescaling.
    pub fn beta(&self, theta: f64) -> f64 {
        let r = PI / self.epsilon;
        self.scale * r * r * r * self.raw_beta(r * theta)
    }

    /// `b(theta) = beta(theta) / sin^{d-2}(theta)`.
    pub fn b(&self, theta: f64) -> f64 {
        let beta = self.beta(theta);
        if self.d == 2 || beta == 0.0 {
            return beta;
        }
        if let AngularFamily::Constant = self.family {
            // beta_raw = sin(x) cancels analytically at epsilon = pi
            if self.epsilon == PI {
                return self.scale;
            }
        }
        beta / theta.sin()
    }

    /// Support `[lo, hi]` of `beta`.
    pub fn support(&self) -> (f64, f64) {
        let (lo, hi) = self.raw_support();
        let s = self.epsilon / PI;
        (lo * s, hi * s)
    }

    /// `int beta(theta) theta^k d theta` by composite Gauss-Legendre.
    pub fn moment(&self, k: i32) -> Result<f64> {
        let (t, w) = theta_nodes(self, 16, 16)?;
        Ok(t.iter()
            .zip(&w)
            .map(|(t, w)| w * self.beta(*t) * t.powi(k))
            .sum())
    }
}

/// Rescales `K` so that `int beta theta^2 = 8 (d-1)/|S^{d-2}|`.
pub fn angular_normalize(profile: &AngularProfile) -> Result<AngularProfile> {
    let m = profile.moment(2)?;
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::Invalid {
            field: "angular profile",
            reason: format!("normalization integral is not positive and finite: {m}"),
        });
    }
    let mut out = *profile;
    out.scale *= normalization_target(profile.d) / m;
    Ok(out)
}

/// Grazing rescaling `beta^eps(theta) = (pi/eps)^3 beta(pi theta / eps)`.
///
/// Applied to an unscaled profile; the previous `epsilon` is replaced.
pub fn rescale_angular(profile: &AngularProfile, epsilon: f64) -> Result<AngularProfile> {
    if !(epsilon > 0.0 && epsilon <= PI) {
        return Err(Error::Invalid {
            field: "epsilon",
            reason: format!("grazing parameter must lie in (0, pi], got {epsilon}"),
        });
    }
    let mut out = *profile;
    out.epsilon = epsilon;
    Ok(out)
}

/// Composite Gauss-Legendre nodes over the support of `beta`.
///
/// Power laws get geometrically spaced panels to resolve the singular end.
fn theta_nodes(profile: &AngularProfile, panels: usize, per_panel: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if panels == 0 || per_panel == 0 {
        return Err(Error::Quadrature("angular rule needs panels and nodes".into()));
    }
    let (lo, hi) = profile.support();
    let edges: Vec<f64> = match profile.family {
        AngularFamily::PowerLaw { .. } => {
            let ratio = (hi / lo).powf(1.0 / panels as f64);
            (0..=panels).map(|i| lo * ratio.powi(i as i32)).collect()
        }
        _ => (0..=panels)
            .map(|i| lo + (hi - lo) * i as f64 / panels as f64)
            .collect(),
    };
    let mut t = Vec::with_capacity(panels * per_panel);
    let mut w = Vec::with_capacity(panels * per_panel);
    for e in edges.windows(2) {
        let (x, y) = gauss_legendre_interval(per_panel, e[0], e[1])?;
        t.extend(x);
        w.extend(y);
    }
    Ok((t, w))
}

/// Polar direction rule: `theta` nodes weighted by `beta`, plus a rule on
/// the sphere orthogonal to `k_hat`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularRule {
    pub d: usize,
    pub thetas: Vec<f64>,
    /// `beta(theta_i) w_i`; summing `G` against these integrates `b G d omega`.
    pub beta_weights: Vec<f64>,
    cos_t: Vec<f64>,
    sin_t: Vec<f64>,
    /// Angles of the orthogonal circle nodes (d = 3).
    circle: Vec<(f64, f64)>,
    circle_weight: f64,
}

/// Default polar budget: 4 panels of 8 nodes, 16 circle nodes in 3D.
pub const DEFAULT_PANELS: usize = 4;
pub const DEFAULT_PER_PANEL: usize = 8;
pub const DEFAULT_CIRCLE: usize = 16;

impl AngularRule {
    pub fn new(
        profile: &AngularProfile,
        panels: usize,
        per_panel: usize,
        circle_nodes: usize,
    ) -> Result<Self> {
        let (t, w) = theta_nodes(profile, panels, per_panel)?;
        let beta_weights: Vec<f64> = t.iter().zip(&w).map(|(t, w)| w * profile.beta(*t)).collect();
        let (circle, circle_weight) = if profile.d == 2 {
            (vec![(1.0, 0.0), (-1.0, 0.0)], 1.0)
        } else {
            if circle_nodes == 0 {
                return Err(Error::Quadrature("circle rule needs nodes".into()));
            }
            let n = circle_nodes as f64;
            (
                (0..circle_nodes)
                    .map(|j| {
                        let a = 2.0 * PI * (j as f64 + 0.5) / n;
                        (a.cos(), a.sin())
                    })
                    .collect(),
                2.0 * PI / n,
            )
        };
        Ok(Self {
            d: profile.d,
            cos_t: t.iter().map(|t| t.cos()).collect(),
            sin_t: t.iter().map(|t| t.sin()).collect(),
            thetas: t,
            beta_weights,
            circle,
            circle_weight,
        })
    }

    /// Default rule for the given profile.
    pub fn default_for(profile: &AngularProfile) -> Result<Self> {
        Self::new(profile, DEFAULT_PANELS, DEFAULT_PER_PANEL, DEFAULT_CIRCLE)
    }

    /// Number of directions produced per pair.
    pub fn len(&self) -> usize {
        self.thetas.len() * self.circle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    /// Calls `visit(theta_index, omega, weight)` for every direction about `k`.
    ///
    /// The weight integrates `b(theta) d omega`; multiply by `sigma` to obtain
    /// the kernel measure.
    pub fn for_each_direction(&self, k: &Vec3, mut visit: impl FnMut(usize, &Vec3, f64)) {
        let (e1, e2) = orthonormal_complement(k, self.d);
        for (i, wb) in self.beta_weights.iter().enumerate() {
            let (c, s) = (self.cos_t[i], self.sin_t[i]);
            for (ca, sa) in &self.circle {
                let e = e1 * *ca + e2 * *sa;
                let omega = k * c + e * s;
                visit(i, &omega, wb * self.circle_weight);
            }
        }
    }
}

/// Orthonormal basis of the complement of unit `k` within the first `d` axes.
/// In 2D the second vector is zero.
pub fn orthonormal_complement(k: &Vec3, d: usize) -> (Vec3, Vec3) {
    if d == 2 {
        return (Vec3::new(-k.y, k.x, 0.0), Vec3::zeros());
    }
    let a = if k.x.abs() <= k.y.abs() && k.x.abs() <= k.z.abs() {
        Vec3::x()
    } else if k.y.abs() <= k.z.abs() {
        Vec3::y()
    } else {
        Vec3::z()
    };
    let e1 = k.cross(&a).normalize();
    let e2 = k.cross(&e1);
    (e1, e2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets() {
        assert!((normalization_target(3) - 8.0 / PI).abs() < 1e-15);
        assert_eq!(normalization_target(2), 4.0);
    }

    #[test]
    fn normalization_fixed_point() {
        for d in [2, 3] {
            for fam in [
                AngularFamily::PowerLaw {
                    nu: 1.0,
                    theta0: 1e-3,
                },
                AngularFamily::Constant,
                AngularFamily::Bump,
            ] {
                let p = angular_normalize(&AngularProfile::new(fam, d).unwrap()).unwrap();
                assert!((p.moment(2).unwrap() - normalization_target(d)).abs() < 1e-10);
                let q = angular_normalize(&p).unwrap();
                assert!((q.scale - p.scale).abs() < 1e-12 * p.scale);
            }
        }
    }

    #[test]
    fn power_law_scale_is_analytic() {
        let p = AngularProfile::default_for(2).unwrap();
        let expect = 4.0 / (FRAC_PI_2 - 1e-3);
        assert!((p.scale - expect).abs() < 1e-10 * expect);
    }

    #[test]
    fn rescaling_shrinks_support_and_keeps_moment() {
        let base = AngularProfile::default_for(3).unwrap();
        assert_eq!(rescale_angular(&base, PI).unwrap(), base);
        for eps in [1.0, 0.5, 0.2, 0.1] {
            let r = rescale_angular(&base, eps).unwrap();
            assert!(r.support().1 <= eps / 2.0 + 1e-15);
            assert!((r.moment(2).unwrap() - normalization_target(3)).abs() < 1e-8);
        }
        let r = rescale_angular(&base, 0.2).unwrap();
        assert!(r.support().1 <= 0.1 + 1e-15);
    }

    #[test]
    fn direction_rule_integrates_b_on_sphere() {
        // b = 1 on the hemisphere theta <= pi/2 has measure |S^{d-1}|/2
        for (d, area) in [(2, PI), (3, 2.0 * PI)] {
            let p = AngularProfile::new(AngularFamily::Constant, d).unwrap();
            let rule = AngularRule::new(&p, 2, 12, 8).unwrap();
            let k = Vec3::new(0.6, 0.0, 0.8);
            let k = if d == 2 { Vec3::new(0.6, 0.8, 0.0) } else { k };
            let mut total = 0.0;
            let mut first = Vec3::zeros();
            rule.for_each_direction(&k, |_, w, wt| {
                assert!((w.norm() - 1.0).abs() < 1e-14);
                total += wt;
                first += w * wt;
            });
            assert!((total - area).abs() < 1e-12, "d={d} total={total}");
            // mean of omega is parallel to k
            assert!(first.cross(&k).norm() < 1e-12);
        }
    }
}
