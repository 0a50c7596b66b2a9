//! Gauss-Legendre rules, tensor momentum-box rules and seeded RNG streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result, Vec3};

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::Quadrature("Gauss-Legendre needs n >= 1".into()));
    }
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            if n == 1 {
                p1 = z;
                p0 = 1.0;
            } else {
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
            }
            // p1 = P_n(z), p0 = P_{n-1}(z)
            dp = nf * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        if n == 1 {
            z = 0.0;
            dp = 1.0;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n == 1 {
        x[0] = 0.0;
        w[0] = 2.0;
    }
    Ok((x, w))
}

/// Gauss-Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_interval(n: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let (x, w) = gauss_legendre(n)?;
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    Ok((
        x.iter().map(|t| mid + half * t).collect(),
        w.iter().map(|v| v * half).collect(),
    ))
}

/// Tensor-product rule on the momentum box `[-L, L]^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxRule {
    pub d: usize,
    pub halfwidth: f64,
    pub nodes_per_axis: usize,
    pub points: Vec<Vec3>,
    pub weights: Vec<f64>,
}

impl BoxRule {
    /// Tensor Gauss-Legendre rule with `n` nodes per axis.
    pub fn gauss_legendre(d: usize, halfwidth: f64, n: usize) -> Result<Self> {
        if d != 2 && d != 3 {
            return Err(Error::Quadrature(format!("box rule needs d in {{2, 3}}, got {d}")));
        }
        if !(halfwidth > 0.0) {
            return Err(Error::Quadrature(format!(
                "box halfwidth must be positive, got {halfwidth}"
            )));
        }
        let (x, w) = gauss_legendre_interval(n, -halfwidth, halfwidth)?;
        Ok(Self::tensor(d, halfwidth, &x, &w))
    }

    /// Tensor rule from a one-dimensional rule.
    pub fn tensor(d: usize, halfwidth: f64, x: &[f64], w: &[f64]) -> Self {
        let n = x.len();
        let total = n.pow(d as u32);
        let mut points = Vec::with_capacity(total);
        let mut weights = Vec::with_capacity(total);
        for flat in 0..total {
            let mut p = Vec3::zeros();
            let mut wt = 1.0;
            let mut r = flat;
            for a in (0..d).rev() {
                let i = r % n;
                r /= n;
                p[a] = x[i];
                wt *= w[i];
            }
            points.push(p);
            weights.push(wt);
        }
        Self {
            d,
            halfwidth,
            nodes_per_axis: n,
            points,
            weights,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Integral of `g` over the box.
    pub fn integrate(&self, mut g: impl FnMut(&Vec3) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * g(p))
            .sum()
    }

    /// Volume of the box.
    pub fn volume(&self) -> f64 {
        (2.0 * self.halfwidth).powi(self.d as i32)
    }
}

/// Independent deterministic stream for `(seed, stream)`.
pub fn node_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_polynomials() {
        for n in 1..12 {
            let (x, w) = gauss_legendre(n).unwrap();
            for k in 0..(2 * n) {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k as i32)).sum();
                let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-13, "n={n} k={k}");
            }
        }
        assert!(gauss_legendre(0).is_err());
    }

    #[test]
    fn large_rule_is_accurate() {
        let (x, w) = gauss_legendre_interval(64, 0.0, std::f64::consts::PI).unwrap();
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.sin()).sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn box_volume() {
        let r = BoxRule::gauss_legendre(3, 2.0, 4).unwrap();
        assert!((r.integrate(|_| 1.0) - 64.0).abs() < 1e-12);
        assert_eq!(r.len(), 64);
    }
}
