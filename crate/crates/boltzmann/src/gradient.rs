//! Discrete gradient over a collision event.

use kinetica_core::Vec3;
use kinetica_kinematics::CollisionEvent;

/// `phi' + phi*' - phi - phi*` on the event momenta.
pub fn discrete_gradient(phi: impl Fn(&Vec3) -> f64, event: &CollisionEvent) -> f64 {
    phi(&event.p_out) + phi(&event.pstar_out) - phi(&event.p) - phi(&event.pstar)
}

/// Same quantity from momenta directly.
#[inline]
pub fn gradient4(phi: impl Fn(&Vec3) -> f64, p: &Vec3, ps: &Vec3, pp: &Vec3, psp: &Vec3) -> f64 {
    phi(pp) + phi(psp) - phi(p) - phi(ps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use kinetica_core::{ModelSpec, Statistics};

    #[test]
    fn invariants_vanish() {
        for model in [
            ModelSpec::classical(Statistics::MAXWELL, 3).unwrap(),
            ModelSpec::relativistic(Statistics::MAXWELL, 3).unwrap(),
        ] {
            let ev = CollisionEvent::new(
                Vec3::new(0.4, -1.2, 0.3),
                Vec3::new(-0.8, 0.5, 1.1),
                Vec3::new(0.3, 0.4, 0.5).normalize(),
                model,
            )
            .unwrap();
            for j in 0..3 {
                assert!(discrete_gradient(|p| p[j], &ev).abs() < 1e-14);
            }
            let e = discrete_gradient(|p| model.energy(p), &ev);
            assert!(e.abs() < 1e-12, "{e}");
            let g = |p: &Vec3| (-p.norm_squared()).exp();
            let direct = g(&ev.p_out) + g(&ev.pstar_out) - g(&ev.p) - g(&ev.pstar);
            assert_eq!(discrete_gradient(g, &ev), direct);
        }
    }
}
