//! Relaxation, step-doubling, slab transport and Poisson structure audits.

use std::f64::consts::PI;

use kinetica_core::{bimodal, matched_equilibrium, ModelSpec, Statistics, Vec3};
use kinetica_kernels::{AngularRule, KernelSpec};
use kinetica_solver::*;

fn maxwell2() -> ModelSpec {
    ModelSpec::classical(Statistics::MAXWELL, 2).unwrap()
}

fn boltzmann_op(halfwidth: f64, n: usize) -> CollisionOperator {
    let kernel = KernelSpec::default_for(maxwell2()).unwrap();
    let angular = AngularRule::default_for(&kernel.angular).unwrap();
    CollisionOperator::boltzmann(MomentumGrid::new(2, halfwidth, n).unwrap(), &kernel, &angular).unwrap()
}

#[test]
fn bimodal_relaxation_conserves_and_dissipates() {
    let op = boltzmann_op(5.0, 24);
    let f0 = op.grid().sample(&bimodal(&maxwell2()).unwrap());
    let initial = State { time: 0.0, values: f0 };
    let t = std::time::Instant::now();
    let (_, series) = run(&op, &initial, 5.0, 0.025, &MonitorPolicy::default()).unwrap();
    let (first, last) = (series.first().unwrap(), series.last().unwrap());
    eprintln!("{:?} steps {} D0 {} D1 {}", t.elapsed(), series.records.len(), first.dissipation, last.dissipation);
    assert!(series.records.windows(2).all(|w| w[1].time > w[0].time));
    assert!(last.dissipation <= 1e-2 * first.dissipation, "{first:?} {last:?}");
    let audit = generic_energy_entropy_audit(&series, 1e-6);
    assert!(audit.pass, "{audit:?}");
}

#[test]
fn rk4_step_doubling_ratio_is_near_sixteen() {
    let op = boltzmann_op(5.0, 16);
    let f0 = op.grid().sample(&bimodal(&maxwell2()).unwrap());
    let s = step_doubling(&op, &State { time: 0.0, values: f0 }, 0.4, 0.04).unwrap();
    eprintln!("{s:?}");
    assert!((8.0..=32.0).contains(&s.ratio), "{s:?}");
}

#[test]
fn equilibrium_run_is_stationary() {
    let op = boltzmann_op(5.0, 12);
    let f0 = op.grid().sample(&matched_equilibrium(&maxwell2()).unwrap());
    let initial = State { time: 0.0, values: f0.clone() };
    let (out, series) = run(&op, &initial, 1.0, 0.05, &MonitorPolicy::default()).unwrap();
    let diff = out.values.iter().zip(&f0).fold(0.0f64, |a, (x, y)| a.max((x - y).abs()));
    assert!(diff <= 1e-8, "{diff}");
    let audit = generic_energy_entropy_audit(&series, 1e-10);
    assert!(audit.energy_drift <= 1e-10 && audit.min_entropy_production.abs() <= 1e-10, "{audit:?}");
}

fn slab(nx: usize, halfwidth: f64, n: usize) -> (Transport, ModelSpec) {
    let model = maxwell2();
    let grid = SlabGrid::new(nx, 2.0 * PI, MomentumGrid::new(2, halfwidth, n).unwrap()).unwrap();
    (Transport::new(grid, &model).unwrap(), model)
}

#[test]
fn free_transport_returns_after_one_period() {
    let (tr, model) = slab(64, 4.0, 8);
    let g = tr.grid().clone();
    let f0 = modulated(&g, |p| (-0.5 * p.norm_squared()).exp(), 0.4);
    // the node with the smallest nonzero |v_x| sets the period
    let v = g.momentum.points.iter().map(|p| p.x.abs()).fold(f64::INFINITY, f64::min);
    let period = g.length / v;
    let initial = SlabState { time: 0.0, values: f0.clone() };
    let (out, series) = slab_run(&tr, None, &model, &initial, period, period / 500.0, &MonitorPolicy::default()).unwrap();
    let np = g.np();
    let slow: Vec<usize> = (0..np).filter(|&k| (g.momentum.points[k].x.abs() - v).abs() < 1e-12).collect();
    for ix in 0..g.nx {
        for &k in &slow {
            let i = g.index(ix, k);
            assert!((out.values[i] - f0[i]).abs() < 1e-12);
        }
    }
    let exact = g.sample(|x, p| (1.0 + 0.4 * (x - p.x * period).cos()) * (-0.5 * p.norm_squared()).exp());
    let err = out.values.iter().zip(&exact).fold(0.0f64, |a, (x, y)| a.max((x - y).abs()));
    assert!(err < 1e-12, "{err}");
    let (first, last) = (series.first().unwrap(), series.last().unwrap());
    assert!((last.energy - first.energy).abs() <= 1e-12 * first.energy.abs());
    let h_drift = series.records.iter().fold(0.0f64, |a, r| a.max((r.entropy - first.entropy).abs()));
    assert!(h_drift <= 1e-8 * first.entropy.abs(), "{h_drift}");
}

#[test]
fn slab_with_collisions_keeps_moments() {
    let (tr, model) = slab(64, 4.0, 8);
    let kernel = KernelSpec::default_for(model).unwrap();
    let angular = AngularRule::default_for(&kernel.angular).unwrap();
    let op = CollisionOperator::boltzmann(tr.grid().momentum.clone(), &kernel, &angular).unwrap();
    let f = bimodal(&model).unwrap();
    let f0 = modulated(tr.grid(), |p| f.value(p), 0.3);
    let initial = SlabState { time: 0.0, values: f0 };
    let (_, series) = slab_run(&tr, Some(&op), &model, &initial, 0.5, 0.025, &MonitorPolicy::default()).unwrap();
    let (first, last) = (series.first().unwrap(), series.last().unwrap());
    assert!(last.entropy < first.entropy);
    assert!((last.energy - first.energy).abs() <= 1e-6 * first.energy.abs());
}

#[test]
fn poisson_structure_holds_on_three_fixtures() {
    let g = SlabGrid::new(64, 2.0 * PI, MomentumGrid::new(2, 10.0, 40).unwrap()).unwrap();
    for statistics in [Statistics::MAXWELL, Statistics::BOSE, Statistics::FERMI, Statistics::Wave, Statistics::Linear] {
        let model = maxwell2().with_statistics(statistics);
        let reports = poisson_checks(&g, &model, 1e-12).unwrap();
        assert_eq!(reports.len(), 3);
        for r in reports {
            eprintln!("{} {r:?}", statistics.label());
            assert!(r.pass, "{} {r:?}", statistics.label());
        }
    }
}

#[test]
fn poisson_field_of_constant_vanishes() {
    let g = SlabGrid::new(16, 1.0, MomentumGrid::new(2, 4.0, 8).unwrap()).unwrap();
    let f = modulated(&g, |p: &Vec3| (-p.norm_squared()).exp(), 0.5);
    let out = poisson_apply(&g, &f, &vec![1.0; g.len()]).unwrap();
    assert!(out.iter().all(|v| v.abs() < 1e-14));
}
