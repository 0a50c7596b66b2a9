//! Symmetry, normalization and Newtonian-limit properties of the kernels.

use std::f64::consts::PI;

use kinetica_core::{Dynamics, ModelSpec, PhysicalConstants, Statistics, Vec3};
use kinetica_kernels::{
    kernel_classical, kernel_landau, kernel_relativistic, modified_relativistic,
    normalization_target, rescale_angular, AngularFamily, AngularProfile, KernelSpec, SigmaFamily,
};
use kinetica_kinematics::{lorentz_frame, relativistic_post_collision};
use proptest::prelude::*;

fn model(dynamics: Dynamics, d: usize, c: f64) -> ModelSpec {
    ModelSpec::new(
        dynamics,
        Statistics::MAXWELL,
        d,
        PhysicalConstants::new(1.0, c, 1.0).unwrap(),
    )
    .unwrap()
}

fn bump_spec(dynamics: Dynamics, d: usize, c: f64, sigma: SigmaFamily) -> KernelSpec {
    let ang = kinetica_kernels::angular_normalize(
        &AngularProfile::new(AngularFamily::Bump, d).unwrap(),
    )
    .unwrap();
    KernelSpec::new(sigma, ang, model(dynamics, d, c)).unwrap()
}

fn vec3(v: [f64; 3], d: usize) -> Vec3 {
    Vec3::new(v[0], v[1], if d == 3 { v[2] } else { 0.0 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn swap_symmetry(
        a in prop::array::uniform3(-3.0f64..3.0),
        b in prop::array::uniform3(-3.0f64..3.0),
        w in prop::array::uniform3(-1.0f64..1.0),
        d in 2usize..4,
    ) {
        let (p, q, w) = (vec3(a, d), vec3(b, d), vec3(w, d));
        prop_assume!(w.norm() > 1e-3 && (p - q).norm() > 1e-6);
        let w = w.normalize();
        let sigma = SigmaFamily::PowerLaw { sigma0: 1.0, gamma: 0.5 };
        for dy in [Dynamics::Classical, Dynamics::Relativistic] {
            let s = bump_spec(dy, d, 1.0, sigma);
            let (x, y) = match dy {
                Dynamics::Classical => (kernel_classical(&p, &q, &w, &s), kernel_classical(&q, &p, &-w, &s)),
                Dynamics::Relativistic => (kernel_relativistic(&p, &q, &w, &s), kernel_relativistic(&q, &p, &-w, &s)),
            };
            prop_assert!((x - y).abs() <= 1e-12 * (1.0 + x.abs()));
            prop_assert!((kernel_landau(&p, &q, &s) - kernel_landau(&q, &p, &s)).abs() <= 1e-12 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn modified_relativistic_kernel_is_pre_post_symmetric(
        a in prop::array::uniform3(-3.0f64..3.0),
        b in prop::array::uniform3(-3.0f64..3.0),
        w in prop::array::uniform3(-1.0f64..1.0),
    ) {
        let d = 3;
        let (p, q, w) = (vec3(a, d), vec3(b, d), vec3(w, d));
        prop_assume!(w.norm() > 1e-3 && (p - q).norm() > 1e-3);
        let w = w.normalize();
        let s = bump_spec(Dynamics::Relativistic, d, 1.0, SigmaFamily::default());
        let k = s.model.constants;
        let fr = lorentz_frame(&p, &q, &k);
        let w = if fr.k_hat.unwrap().dot(&w) < 0.0 { -w } else { w };
        let out = relativistic_post_collision(&p, &q, &w, &k);
        let forward = modified_relativistic(
            kernel_relativistic(&p, &q, &w, &s), fr.s, fr.g, out.p0, out.p0_star, d);
        // the reverse collision uses the forward k_hat as its direction
        let back_frame = lorentz_frame(&out.p, &out.pstar, &k);
        prop_assert!((back_frame.k_hat.unwrap() - w).norm() < 1e-9);
        let kh = fr.k_hat.unwrap();
        let rev = relativistic_post_collision(&out.p, &out.pstar, &kh, &k);
        prop_assert!((rev.p - p).norm() < 1e-9 && (rev.pstar - q).norm() < 1e-9);
        let backward = modified_relativistic(
            kernel_relativistic(&out.p, &out.pstar, &kh, &s),
            back_frame.s, back_frame.g, fr.p0, fr.p0_star, d);
        prop_assert!((forward - backward).abs() <= 1e-9 * forward.abs().max(1e-12));
    }
}

#[test]
fn normalization_is_invariant_under_grazing_rescaling() {
    for d in [2, 3] {
        let base = AngularProfile::default_for(d).unwrap();
        for eps in [1.0, 0.5, 0.2, 0.1] {
            let r = rescale_angular(&base, eps).unwrap();
            let m = r.moment(2).unwrap();
            assert!((m - normalization_target(d)).abs() < 1e-8, "d={d} eps={eps} m={m}");
        }
        assert_eq!(rescale_angular(&base, PI).unwrap(), base);
    }
}

fn orders(gaps: &[f64]) -> Vec<f64> {
    gaps.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

#[test]
fn relativistic_kernels_approach_classical_ones() {
    let p = Vec3::new(0.7, -0.3, 0.4);
    let q = Vec3::new(-0.2, 0.9, -0.5);
    let w = Vec3::new(0.8, -0.5, 0.2).normalize();
    let sigma = SigmaFamily::Constant { sigma0: 1.0 };
    let cl = bump_spec(Dynamics::Classical, 3, 1.0, sigma);
    let b = kernel_classical(&p, &q, &w, &cl);
    let lc = kernel_landau(&p, &q, &cl);
    let mut gb = Vec::new();
    let mut gl = Vec::new();
    for c in [5.0, 10.0, 20.0, 40.0] {
        let rel = bump_spec(Dynamics::Relativistic, 3, c, sigma.newtonian_partner(1.0));
        gb.push((kernel_relativistic(&p, &q, &w, &rel) - b).abs());
        let rl = bump_spec(Dynamics::Relativistic, 3, c, sigma);
        // v_c sigma g^2 with v_c -> 2|u|/m, compare after dividing by 2/m
        gl.push((0.5 * kernel_landau(&p, &q, &rl) / (p - q).norm() - lc).abs());
    }
    for o in orders(&gb).into_iter().chain(orders(&gl)) {
        assert!(o >= 1.8, "orders {:?} {:?}", orders(&gb), orders(&gl));
    }
}
