//! Property tests for entropy densities, dissipation potentials, the
//! logarithmic mean and equilibrium moments.

use kinetica_core::{
    entropy_density, equilibrium, logarithmic_mean, moments, psi_star, psi_star_prime, BoxRule,
    DissipationKind, Dynamics, Family, ModelSpec, PhysicalConstants, Statistics, Vec3,
};
use proptest::prelude::*;

const KINDS: [DissipationKind; 2] = [DissipationKind::Quadratic, DissipationKind::Cosh];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn psi_star_even_and_monotone(r in -20.0f64..20.0) {
        for k in KINDS {
            prop_assert_eq!(psi_star(r, k), psi_star(-r, k));
            prop_assert!(r * psi_star_prime(r, k) >= 0.0);
        }
    }

    #[test]
    fn psi_star_secant_convexity(a in -20.0f64..20.0, b in -20.0f64..20.0, l in 0.0f64..1.0) {
        for k in KINDS {
            let mid = psi_star(l * a + (1.0 - l) * b, k);
            let chord = l * psi_star(a, k) + (1.0 - l) * psi_star(b, k);
            prop_assert!(mid <= chord * (1.0 + 1e-12) + 1e-12);
        }
    }
}

fn domain_upper(s: Statistics) -> f64 {
    if s == Statistics::FERMI {
        1.0
    } else {
        50.0
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn entropy_secant_convexity(u in 0.0f64..1.0, v in 0.0f64..1.0, l in 0.0f64..1.0) {
        let stats = [
            Statistics::MAXWELL,
            Statistics::BOSE,
            Statistics::FERMI,
            Statistics::Wave,
            Statistics::Linear,
        ];
        for s in stats {
            let hi = domain_upper(s);
            let (a, b) = (1e-6 + u * hi, 1e-6 + v * hi);
            let (a, b) = (a.min(hi), b.min(hi));
            let h = |x: f64| entropy_density(x, s).unwrap();
            let mid = h(l * a + (1.0 - l) * b);
            let chord = l * h(a) + (1.0 - l) * h(b);
            prop_assert!(mid <= chord + 1e-10 * (1.0 + chord.abs()), "{:?}", s);
        }
    }

    #[test]
    fn log_mean_bounds_and_symmetry(s in 1e-6f64..1e6, t in 1e-6f64..1e6) {
        let l = logarithmic_mean(s, t).unwrap();
        let r = logarithmic_mean(t, s).unwrap();
        prop_assert!((l - r).abs() <= 1e-14 * l);
        prop_assert!(l >= s.min(t) * (1.0 - 1e-14) && l <= s.max(t) * (1.0 + 1e-14));
    }
}

#[test]
fn maxwell_entropy_at_one() {
    assert_eq!(entropy_density(1.0, Statistics::MAXWELL).unwrap(), -1.0);
}

#[test]
fn equilibrium_moments_stable_under_refinement() {
    let k = PhysicalConstants::new(1.0, 2.0, 1.0).unwrap();
    let cl = ModelSpec::new(Dynamics::Classical, Statistics::MAXWELL, 2, k).unwrap();
    let rel = ModelSpec::new(Dynamics::Relativistic, Statistics::MAXWELL, 2, k).unwrap();
    let cases = vec![
        (
            cl,
            Family::Maxwellian {
                rho: 1.0,
                u: Vec3::new(0.3, -0.2, 0.0),
                t: 1.0,
            },
        ),
        (cl, Family::BoseEinstein { mu: -0.5, t: 1.0 }),
        (cl, Family::FermiDirac { mu: 0.5, t: 1.0 }),
        (cl, Family::RayleighJeans { mu: 1.0, t: 1.0 }),
        (
            rel,
            Family::Juttner {
                amplitude: 1.0,
                t: 1.0,
            },
        ),
        (rel, Family::BoseEinstein { mu: 3.0, t: 1.0 }),
    ];
    let coarse = BoxRule::gauss_legendre(2, 6.0, 64).unwrap();
    let fine = BoxRule::gauss_legendre(2, 6.0, 128).unwrap();
    for (model, fam) in cases {
        let f = equilibrium(fam.clone(), &model).unwrap();
        let a = moments(&f, &model, &coarse);
        let b = moments(&f, &model, &fine);
        assert!(a.mass.is_finite() && a.energy.is_finite());
        let scale = 1.0 + b.mass.abs() + b.energy.abs();
        assert!((a.mass - b.mass).abs() < 1e-8 * scale, "{fam:?}");
        assert!((a.energy - b.energy).abs() < 1e-8 * scale, "{fam:?}");
        assert!((a.momentum - b.momentum).norm() < 1e-8 * scale, "{fam:?}");
    }
}

#[test]
fn maxwellian_mass_and_energy() {
    let model = ModelSpec::classical(Statistics::MAXWELL, 2).unwrap();
    for t in [0.5, 1.0, 2.0] {
        let f = equilibrium(
            Family::Maxwellian {
                rho: 1.0,
                u: Vec3::zeros(),
                t,
            },
            &model,
        )
        .unwrap();
        let mo = moments(&f, &model, &BoxRule::gauss_legendre(2, 12.0, 64).unwrap());
        assert!((mo.mass - 1.0).abs() < 1e-8);
        assert!((mo.energy - t).abs() < 1e-6);
    }
}
