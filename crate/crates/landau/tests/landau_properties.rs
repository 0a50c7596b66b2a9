//! Equilibria, conservation, dissipation and projection cross-checks of the
//! Landau-type operators.

use kinetica_core::{
    bimodal, entropy_prime, matched_equilibrium, standard_fixtures, Dynamics, ModelSpec,
    PhysicalConstants, Statistics, Vec3,
};
use kinetica_kernels::KernelSpec;
use kinetica_landau::{
    evaluate_ql, landau_dissipation, landau_onsager, landau_strong_pairing, landau_weak_form,
    LandauQuadrature, ProjectionForm,
};

const STATS: [Statistics; 5] = [
    Statistics::MAXWELL,
    Statistics::BOSE,
    Statistics::FERMI,
    Statistics::Wave,
    Statistics::Linear,
];

fn kernel(dynamics: Dynamics, stats: Statistics) -> KernelSpec {
    let model = ModelSpec::new(dynamics, stats, 2, PhysicalConstants::default()).unwrap();
    KernelSpec::default_for(model).unwrap()
}

fn probes() -> Vec<Vec3> {
    vec![
        Vec3::new(0.0, 0.0, 0.0),
        Vec3::new(0.7, -0.4, 0.0),
        Vec3::new(-1.5, 1.1, 0.0),
    ]
}

#[test]
fn equilibria_are_annihilated() {
    for dy in [Dynamics::Classical, Dynamics::Relativistic] {
        for s in STATS {
            let k = kernel(dy, s);
            let f = matched_equilibrium(&k.model).unwrap();
            let sup = |n| {
                let q = LandauQuadrature::new(2, 6.0, n).unwrap();
                probes()
                    .iter()
                    .map(|p| evaluate_ql(&f, p, &k, &q).unwrap().abs())
                    .fold(0.0, f64::max)
            };
            let (coarse, fine) = (sup(8), sup(16));
            assert!(fine <= 1e-5, "{dy:?} {} {fine}", s.label());
            assert!(coarse / fine >= 3.0 || coarse.max(fine) <= 1e-9, "{dy:?} {} {coarse} {fine}", s.label());
            let q = LandauQuadrature::new(2, 6.0, 10).unwrap();
            let d = landau_dissipation(&f, &k, &q).unwrap();
            assert!(d.abs() <= 1e-10, "{dy:?} {} D = {d}", s.label());
        }
    }
}

#[test]
fn conservation_and_dissipation_on_fixtures() {
    for dy in [Dynamics::Classical, Dynamics::Relativistic] {
        for s in STATS {
            let k = kernel(dy, s);
            let model = k.model;
            let q = LandauQuadrature::new(2, 6.0, 12).unwrap();
            for (name, f) in standard_fixtures(&model).unwrap() {
                let grads: [&(dyn Fn(&Vec3) -> Vec3 + Sync); 4] = [
                    &|_| Vec3::zeros(),
                    &|_| Vec3::x(),
                    &|_| Vec3::y(),
                    &|p| model.velocity(p),
                ];
                for (j, g) in grads.iter().enumerate() {
                    let w = landau_weak_form(&f, *g, &k, &q).unwrap();
                    assert!(w.relative() <= 1e-8, "{dy:?} {} {name} phi#{j} {w:?}", s.label());
                }
                let d = landau_dissipation(&f, &k, &q).unwrap();
                assert!(d >= -1e-12, "{dy:?} {} {name} D = {d}", s.label());
            }
        }
    }
}

/// Strong pairing `int Q_L phi` against the symmetric weak form. The wave
/// entropy variable `-1/f` is excluded: its pairing with `Q_L` diverges on the
/// whole space, so its box value depends on the truncation.
#[test]
fn strong_form_matches_weak_form() {
    let phi = |p: &Vec3| (-(p - Vec3::new(0.4, -0.2, 0.0)).norm_squared()).exp();
    let grad_phi = |p: &Vec3| -2.0 * (p - Vec3::new(0.4, -0.2, 0.0)) * phi(p);
    for dy in [Dynamics::Classical, Dynamics::Relativistic] {
        for s in STATS {
            let k = kernel(dy, s);
            let q = LandauQuadrature::new(2, 6.0, 56).unwrap();
            let f = bimodal(&k.model).unwrap();
            let strong = landau_strong_pairing(&f, &phi, &k, &q).unwrap();
            let weak = landau_weak_form(&f, &grad_phi, &k, &q).unwrap();
            let rel = (strong - weak.value).abs() / weak.value.abs();
            assert!(rel <= 1e-5, "{dy:?} {}: strong {strong}, weak {}, rel {rel:e}", s.label(), weak.value);
            if s == Statistics::Wave {
                continue;
            }
            let h = |p: &Vec3| entropy_prime(f.value(p), s);
            let strong = landau_strong_pairing(&f, &h, &k, &q).unwrap();
            let d = landau_dissipation(&f, &k, &q).unwrap();
            let rel = (strong + d).abs() / d;
            assert!(rel <= 1e-5, "{dy:?} {}: strong {strong}, D {d}, rel {rel:e}", s.label());
        }
    }
}

#[test]
fn boosted_projection_matches_closed_form() {
    for s in STATS {
        let k = kernel(Dynamics::Relativistic, s);
        let f = bimodal(&k.model).unwrap();
        let closed = LandauQuadrature::new(2, 6.0, 10).unwrap();
        let boosted = closed.clone().with_projection(ProjectionForm::Boosted);
        for p in probes() {
            let a = evaluate_ql(&f, &p, &k, &closed).unwrap();
            let b = evaluate_ql(&f, &p, &k, &boosted).unwrap();
            assert!((a - b).abs() <= 1e-9 * a.abs().max(1e-12), "{} {a} {b}", s.label());
        }
    }
}

#[test]
fn onsager_pairing_is_symmetric() {
    for dy in [Dynamics::Classical, Dynamics::Relativistic] {
        for s in STATS {
            let k = kernel(dy, s);
            let q = LandauQuadrature::new(2, 6.0, 10).unwrap();
            let f = bimodal(&k.model).unwrap();
            let ga = |p: &Vec3| Vec3::new((-0.5 * p.x).exp() * p.y, p.x * p.x, 0.0);
            let gb = |p: &Vec3| Vec3::new(p.y.sin(), (0.3 * p.x).cos() * p.y, 0.0);
            let ab = landau_onsager(&f, &ga, &gb, &k, &q).unwrap();
            let ba = landau_onsager(&f, &gb, &ga, &k, &q).unwrap();
            assert!((ab - ba).abs() <= 1e-10 * ab.abs().max(1e-300), "{ab} {ba}");
            assert!(landau_onsager(&f, &ga, &ga, &k, &q).unwrap() >= -1e-12);
        }
    }
}
