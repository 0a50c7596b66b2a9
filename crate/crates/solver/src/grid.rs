//! Uniform cell-centred momentum grids and grid moments.

use kinetica_core::{entropy_density, Distribution, Error, ModelSpec, Moments, Result, Vec3};

/// Cell-centred uniform grid on `[-L, L]^d` with `n` cells per axis.
///
/// Node `a` on an axis sits at `-L + (a + 1/2) h`, so the midpoint of two
/// nodes is the node whose index is the mean of theirs; the collision
/// stencils rely on that mirror property.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid {
    pub d: usize,
    pub halfwidth: f64,
    pub n: usize,
    pub h: f64,
    /// Row-major nodes, first axis slowest.
    pub points: Vec<Vec3>,
}

impl MomentumGrid {
    pub fn new(d: usize, halfwidth: f64, n: usize) -> Result<Self> {
        if d != 2 && d != 3 {
            return Err(Error::Invalid {
                field: "d",
                reason: format!("dimension must be 2 or 3, got {d}"),
            });
        }
        if !(halfwidth > 0.0 && halfwidth.is_finite()) {
            return Err(Error::Invalid {
                field: "halfwidth",
                reason: format!("must be positive and finite, got {halfwidth}"),
            });
        }
        if n < 4 {
            return Err(Error::Invalid {
                field: "nodes",
                reason: format!("need at least 4 cells per axis, got {n}"),
            });
        }
        let h = 2.0 * halfwidth / n as f64;
        let total = n.pow(d as u32);
        let mut points = Vec::with_capacity(total);
        for k in 0..total {
            let c = Self::split(k, n, d);
            let mut p = Vec3::zeros();
            for a in 0..d {
                p[a] = -halfwidth + (c[a] as f64 + 0.5) * h;
            }
            points.push(p);
        }
        Ok(Self {
            d,
            halfwidth,
            n,
            h,
            points,
        })
    }

    fn split(mut k: usize, n: usize, d: usize) -> [i64; 3] {
        let mut c = [0i64; 3];
        for a in (0..d).rev() {
            c[a] = (k % n) as i64;
            k /= n;
        }
        c
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Cell volume `h^d`, the weight of every node.
    pub fn weight(&self) -> f64 {
        self.h.powi(self.d as i32)
    }

    /// Integer coordinates of node `k`.
    pub fn coords(&self, k: usize) -> [i64; 3] {
        Self::split(k, self.n, self.d)
    }

    /// Flat index of integer coordinates, `None` outside the grid.
    pub fn index(&self, c: [i64; 3]) -> Option<usize> {
        let mut k = 0usize;
        for &ca in c.iter().take(self.d) {
            if ca < 0 || ca >= self.n as i64 {
                return None;
            }
            k = k * self.n + ca as usize;
        }
        Some(k)
    }

    /// Coordinates of the node nearest to `p`, possibly outside the grid.
    pub fn nearest(&self, p: &Vec3) -> [i64; 3] {
        let mut c = [0i64; 3];
        for (a, ca) in c.iter_mut().enumerate().take(self.d) {
            *ca = ((p[a] + self.halfwidth) / self.h - 0.5).round() as i64;
        }
        c
    }

    /// Neighbour of node `k` one step along `axis`, `None` past the edge.
    pub fn neighbour(&self, k: usize, axis: usize, step: i64) -> Option<usize> {
        let mut c = self.coords(k);
        c[axis] += step;
        self.index(c)
    }

    /// Nodal samples of a distribution.
    pub fn sample(&self, f: &Distribution) -> Vec<f64> {
        self.points.iter().map(|p| f.value(p)).collect()
    }

    /// Mass, momentum and energy of nodal values.
    pub fn moments(&self, model: &ModelSpec, values: &[f64]) -> Moments {
        let w = self.weight();
        let mut out = Moments {
            mass: 0.0,
            momentum: Vec3::zeros(),
            energy: 0.0,
        };
        for (p, f) in self.points.iter().zip(values) {
            out.mass += w * f;
            out.momentum += p * (w * f);
            out.energy += w * f * model.energy(p);
        }
        out
    }

    /// `sum w f |p|`, the scale for relative momentum drift.
    pub fn momentum_scale(&self, values: &[f64]) -> f64 {
        let w = self.weight();
        self.points.iter().zip(values).map(|(p, f)| w * f.abs() * p.norm()).sum()
    }

    /// Entropy `H = sum w h(f)`.
    pub fn entropy(&self, model: &ModelSpec, values: &[f64]) -> Result<f64> {
        let w = self.weight();
        let mut acc = 0.0;
        for f in values {
            acc += w * entropy_density(*f, model.statistics)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_nodes_share_midpoints() {
        let g = MomentumGrid::new(2, 3.0, 12).unwrap();
        let (i, j) = (17, 100);
        let (ci, cj) = (g.coords(i), g.coords(j));
        let mid = (g.points[i] + g.points[j]) * 0.5;
        let l = g.index([ci[0] + 1, ci[1] - 2, 0]).unwrap();
        let m = g.index([cj[0] - 1, cj[1] + 2, 0]).unwrap();
        assert!(((g.points[l] + g.points[m]) * 0.5 - mid).norm() < 1e-14);
        assert_eq!(g.nearest(&g.points[i]), ci);
    }
}
