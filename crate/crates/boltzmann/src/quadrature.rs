//! Quadrature budgets and event enumeration for the collision integral.

use kinetica_core::{BoxRule, Dynamics, Error, Result, Vec3};
use kinetica_kernels::{AngularRule, KernelSpec};
use kinetica_kinematics::lorentz_frame;
use rand::Rng;

/// How the `p*` integral is computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sampling {
    /// Tensor Gauss-Legendre nodes of the momentum box.
    Deterministic,
    /// Uniform samples in the box, `samples` per output point, seeded per node.
    MonteCarlo { samples: usize, seed: u64 },
}

/// Momentum box rule, polar direction rule and sampling mode.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub momentum: BoxRule,
    pub angular: AngularRule,
    pub sampling: Sampling,
}

/// Default box half-width and nodes per axis for two-dimensional runs.
pub const DEFAULT_HALFWIDTH: f64 = 6.0;
pub const DEFAULT_NODES: usize = 24;
/// Default Monte Carlo budget in events per output point.
pub const DEFAULT_MC_EVENTS: usize = 200_000;

impl QuadratureSpec {
    pub fn new(momentum: BoxRule, angular: AngularRule, sampling: Sampling) -> Result<Self> {
        if momentum.is_empty() || angular.is_empty() {
            return Err(Error::Quadrature("quadrature budget is zero".into()));
        }
        if let Sampling::MonteCarlo { samples: 0, .. } = sampling {
            return Err(Error::Quadrature("Monte Carlo sample count is zero".into()));
        }
        if momentum.d != angular.d {
            return Err(Error::Quadrature(format!(
                "box dimension {} differs from angular dimension {}",
                momentum.d, angular.d
            )));
        }
        Ok(Self {
            momentum,
            angular,
            sampling,
        })
    }

    /// Deterministic tensor rule with the default polar rule for the kernel.
    pub fn deterministic(kernel: &KernelSpec, halfwidth: f64, nodes: usize) -> Result<Self> {
        Self::new(
            BoxRule::gauss_legendre(kernel.model.d, halfwidth, nodes)?,
            AngularRule::default_for(&kernel.angular)?,
            Sampling::Deterministic,
        )
    }

    /// Default budget: deterministic in 2D, Monte Carlo in 3D.
    pub fn default_for(kernel: &KernelSpec, seed: u64) -> Result<Self> {
        let d = kernel.model.d;
        let angular = AngularRule::default_for(&kernel.angular)?;
        let (nodes, sampling) = if d == 2 {
            (DEFAULT_NODES, Sampling::Deterministic)
        } else {
            let samples = DEFAULT_MC_EVENTS.div_ceil(angular.len());
            (12, Sampling::MonteCarlo { samples, seed })
        };
        Self::new(
            BoxRule::gauss_legendre(d, DEFAULT_HALFWIDTH, nodes)?,
            angular,
            sampling,
        )
    }

    pub fn with_sampling(mut self, sampling: Sampling) -> Result<Self> {
        self.sampling = sampling;
        Self::new(self.momentum, self.angular, self.sampling)
    }

    pub fn with_angular(self, angular: AngularRule) -> Result<Self> {
        Self::new(self.momentum, angular, self.sampling)
    }

    /// Uniform point in the momentum box.
    pub(crate) fn sample_point(&self, rng: &mut impl Rng) -> Vec3 {
        let l = self.momentum.halfwidth;
        let mut p = Vec3::zeros();
        for a in 0..self.momentum.d {
            p[a] = rng.gen_range(-l..l);
        }
        p
    }
}

/// Calls `visit(p', p*', weight)` for every direction of the pair, where
/// `weight` integrates the kernel measure `B d omega`.
///
/// Coincident pairs are skipped: the direction is undefined there and the
/// set has measure zero.
#[inline]
pub fn for_each_event(
    kernel: &KernelSpec,
    angular: &AngularRule,
    p: &Vec3,
    pstar: &Vec3,
    mut visit: impl FnMut(&Vec3, &Vec3, f64),
) {
    match kernel.model.dynamics {
        Dynamics::Classical => {
            let u = p - pstar;
            let r = u.norm();
            if r == 0.0 {
                return;
            }
            let pw = kernel.sigma.eval(r);
            let mid = (p + pstar) * 0.5;
            let k = u / r;
            angular.for_each_direction(&k, |_, omega, w| {
                let half = omega * (0.5 * r);
                visit(&(mid + half), &(mid - half), pw * w);
            });
        }
        Dynamics::Relativistic => {
            let frame = lorentz_frame(p, pstar, &kernel.model.constants);
            let Some(k) = frame.k_hat else { return };
            let pw = kernel.pair_weight(p, pstar, Some(&frame));
            angular.for_each_direction(&k, |_, omega, w| {
                let out = frame.outgoing(p, pstar, omega);
                visit(&out.p, &out.pstar, pw * w);
            });
        }
    }
}
