//! Mass, momentum and energy of a distribution over the momentum box.

use crate::{BoxRule, Distribution, ModelSpec, Vec3};

/// Hydrodynamic moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mass: f64,
    pub momentum: Vec3,
    pub energy: f64,
}

/// `(int f, int p f, int e(p) f)` over the box of `rule`.
pub fn moments(dist: &Distribution, model: &ModelSpec, rule: &BoxRule) -> Moments {
    let mut mass = 0.0;
    let mut momentum = Vec3::zeros();
    let mut energy = 0.0;
    for (p, w) in rule.points.iter().zip(&rule.weights) {
        let f = dist.value(p) * w;
        mass += f;
        momentum += p * f;
        energy += model.energy(p) * f;
    }
    Moments {
        mass,
        momentum,
        energy,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Family, Statistics};

    #[test]
    fn maxwellian_moments() {
        let m = ModelSpec::classical(Statistics::MAXWELL, 2).unwrap();
        let t = 0.7;
        let f = Distribution::analytic(
            Family::Maxwellian {
                rho: 1.0,
                u: Vec3::zeros(),
                t,
            },
            &m,
        )
        .unwrap();
        let rule = BoxRule::gauss_legendre(2, 8.0, 48).unwrap();
        let mo = moments(&f, &m, &rule);
        assert!((mo.mass - 1.0).abs() < 1e-8);
        assert!((mo.energy - t).abs() < 1e-6);
        assert!(mo.momentum.norm() < 1e-12);
        let zero = Distribution::analytic(Family::Constant { value: 0.0 }, &m).unwrap();
        let z = moments(&zero, &m, &rule);
        assert_eq!((z.mass, z.energy, z.momentum.norm()), (0.0, 0.0, 0.0));
    }
}
