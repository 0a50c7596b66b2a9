//! Conservation, entropy dissipation, equilibria and quadrature cross-checks
//! of the Boltzmann-type operators.

use kinetica_boltzmann::{
    clip_for_entropy, compatibility_sweep, entropy_dissipation, evaluate_q, evaluate_q_estimate,
    generalized_dissipation_derivative, suite_cases, weak_forms, QuadratureSpec, Sampling,
    WeightTriple,
};
use kinetica_core::{
    bimodal, entropy_prime, matched_equilibrium, standard_fixtures, Dynamics, ModelSpec,
    PhysicalConstants, Statistics, Vec3,
};
use kinetica_kernels::KernelSpec;

const STATS: [Statistics; 5] = [
    Statistics::MAXWELL,
    Statistics::BOSE,
    Statistics::FERMI,
    Statistics::Wave,
    Statistics::Linear,
];

fn kernel(dynamics: Dynamics, stats: Statistics, d: usize) -> KernelSpec {
    let model = ModelSpec::new(dynamics, stats, d, PhysicalConstants::default()).unwrap();
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
            let k = kernel(dy, s, 2);
            let q = QuadratureSpec::deterministic(&k, 6.0, 12).unwrap();
            let f = matched_equilibrium(&k.model).unwrap();
            for p in probes() {
                let v = evaluate_q(&f, &p, &k, &q).unwrap();
                assert!(v.abs() <= 1e-6, "{dy:?} {} {v}", s.label());
            }
        }
    }
}

#[test]
fn conservation_and_h_theorem_on_fixtures() {
    for dy in [Dynamics::Classical, Dynamics::Relativistic] {
        for s in STATS {
            let k = kernel(dy, s, 2);
            let q = QuadratureSpec::deterministic(&k, 6.0, 10).unwrap();
            let model = k.model;
            for (name, f) in standard_fixtures(&model).unwrap().into_iter().take(2) {
                let one = |_: &Vec3| 1.0;
                let px = |p: &Vec3| p.x;
                let py = |p: &Vec3| p.y;
                let e = |p: &Vec3| model.energy(p);
                let h = |p: &Vec3| entropy_prime(clip_for_entropy(f.value(p), s), s);
                let w = weak_forms(&f, &[&one, &px, &py, &e, &h], &k, &q).unwrap();
                for (j, wf) in w[..4].iter().enumerate() {
                    assert!(wf.relative() <= 1e-10, "{dy:?} {} {name} phi#{j} {wf:?}", s.label());
                }
                assert!(w[4].value <= 1e-12, "{name}: <Q, h'> = {}", w[4].value);
                let d = entropy_dissipation(&f, &k, &q).unwrap();
                assert!(d >= -1e-12);
                let rel = (d + w[4].value).abs() / d.abs().max(1e-300);
                assert!(rel <= 1e-6, "{dy:?} {} {name}: D = {d}, -<Q,h'> = {}", s.label(), -w[4].value);
            }
        }
    }
}

#[test]
fn dissipation_derivative_reproduces_the_operator() {
    for dy in [Dynamics::Classical, Dynamics::Relativistic] {
        for s in STATS {
            let k = kernel(dy, s, 2);
            let q = QuadratureSpec::deterministic(&k, 6.0, 10).unwrap();
            let model = k.model;
            let f = bimodal(&model).unwrap();
            let h = |p: &Vec3| entropy_prime(clip_for_entropy(f.value(p), s), s);
            let triple = WeightTriple::for_statistics(s);
            let dd = generalized_dissipation_derivative(&f, &h, &k, &q, triple);
            let c = |_: &Vec3| 3.0;
            let e = |p: &Vec3| model.energy(p);
            let d_const = generalized_dissipation_derivative(&f, &c, &k, &q, triple);
            let d_energy = generalized_dissipation_derivative(&f, &e, &k, &q, triple);
            for p in probes() {
                let a = dd.eval(&p).unwrap();
                let b = evaluate_q(&f, &p, &k, &q).unwrap();
                assert!((a - b).abs() <= 1e-6 * b.abs().max(1e-12), "{dy:?} {} {a} {b}", s.label());
                assert_eq!(d_const.eval(&p).unwrap(), 0.0);
                let de = d_energy.eval(&p).unwrap();
                assert!(de.abs() <= 1e-10, "{dy:?} {} {de}", s.label());
            }
        }
    }
}

#[test]
fn monte_carlo_agrees_with_deterministic_quadrature() {
    let k = kernel(Dynamics::Classical, Statistics::MAXWELL, 2);
    let det = QuadratureSpec::deterministic(&k, 6.0, 32).unwrap();
    let mc = det
        .clone()
        .with_sampling(Sampling::MonteCarlo {
            samples: 1_000_000 / det.angular.len(),
            seed: 7,
        })
        .unwrap();
    for (name, f) in standard_fixtures(&k.model).unwrap() {
        let p = Vec3::new(0.4, -0.3, 0.0);
        let a = evaluate_q(&f, &p, &k, &det).unwrap();
        let b = evaluate_q_estimate(&f, &p, &k, &mc).unwrap();
        assert!(
            (a - b.value).abs() <= 3.0 * b.std_error,
            "{name}: det {a}, mc {} +- {}",
            b.value,
            b.std_error
        );
    }
}

#[test]
fn three_dimensional_monte_carlo_conserves() {
    let k = kernel(Dynamics::Classical, Statistics::MAXWELL, 3);
    let q = QuadratureSpec::deterministic(&k, 5.0, 4)
        .unwrap()
        .with_sampling(Sampling::MonteCarlo { samples: 40, seed: 3 })
        .unwrap();
    let model = k.model;
    let f = bimodal(&model).unwrap();
    let one = |_: &Vec3| 1.0;
    let pz = |p: &Vec3| p.z;
    let e = |p: &Vec3| model.energy(p);
    for w in weak_forms(&f, &[&one, &pz, &e], &k, &q).unwrap() {
        assert!(w.relative() <= 1e-10, "{w:?}");
    }
    let f_eq = matched_equilibrium(&model).unwrap();
    let v = evaluate_q(&f_eq, &Vec3::new(0.3, 0.2, -0.1), &k, &q).unwrap();
    assert!(v.abs() <= 1e-6);
}

#[test]
fn compatibility_suite_closes() {
    for n in [2, 3] {
        for (row, name, triple) in suite_cases(n).unwrap() {
            let r = compatibility_sweep(&row, name, &triple, 1000, 11).unwrap();
            assert!(r.max_residual <= 1e-10 && r.kappa_spread <= 1e-10, "{r:?}");
            let expected = match row.name {
                "wave" | "linear" => 1.0 / n as f64,
                _ => 1.0,
            };
            assert!((r.kappa - expected).abs() <= 1e-10, "{r:?}");
        }
    }
}
