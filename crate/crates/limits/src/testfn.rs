//! Smooth test functions with analytic gradients.

use kinetica_core::Vec3;

/// Isotropic Gaussian `exp(-|p - center|^2 / (2 width^2))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianTest {
    pub center: Vec3,
    pub width: f64,
}

impl GaussianTest {
    pub fn new(center: Vec3, width: f64) -> Self {
        Self { center, width }
    }

    pub fn value(&self, p: &Vec3) -> f64 {
        (-(p - self.center).norm_squared() / (2.0 * self.width * self.width)).exp()
    }

    pub fn gradient(&self, p: &Vec3) -> Vec3 {
        -(p - self.center) * (self.value(p) / (self.width * self.width))
    }
}

impl Default for GaussianTest {
    /// Off-centre test function used by the sweeps.
    fn default() -> Self {
        Self::new(Vec3::new(0.4, -0.3, 0.0), 1.2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradient_matches_differences() {
        let t = GaussianTest::default();
        let p = Vec3::new(0.9, 0.2, 0.0);
        let h = 1e-6;
        let fd = (t.value(&(p + Vec3::x() * h)) - t.value(&(p - Vec3::x() * h))) / (2.0 * h);
        assert!((fd - t.gradient(&p).x).abs() < 1e-9);
    }
}
