//! Randomized conservation and dissipation sign on two-bump mixtures.

use kinetica_core::{Distribution, Dynamics, Family, GaussianComponent, ModelSpec, PhysicalConstants, Statistics, Vec3};
use kinetica_kernels::KernelSpec;
use kinetica_landau::{landau_dissipation, landau_weak_form, LandauQuadrature};
use proptest::prelude::*;

fn mixture(model: &ModelSpec, a: (f64, f64, f64), b: (f64, f64, f64), w: f64) -> Distribution {
    let bump = |weight, (x, y, t): (f64, f64, f64)| GaussianComponent {
        weight,
        center: Vec3::new(x, y, 0.0),
        t,
    };
    let family = Family::GaussianMixture {
        components: vec![bump(w, a), bump(1.0 - w, b)],
        background: 0.0,
    };
    Distribution::analytic(family, model).unwrap()
}

fn bump() -> impl Strategy<Value = (f64, f64, f64)> {
    (-1.0..1.0f64, -1.0..1.0f64, 0.5..1.5f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn collision_invariants_are_conserved(
        a in bump(), b in bump(), w in 0.2..0.8f64, relativistic in any::<bool>(), s in 0usize..3
    ) {
        let dy = if relativistic { Dynamics::Relativistic } else { Dynamics::Classical };
        let stats = [Statistics::MAXWELL, Statistics::BOSE, Statistics::Wave][s];
        let model = ModelSpec::new(dy, stats, 2, PhysicalConstants::default()).unwrap();
        let kernel = KernelSpec::default_for(model).unwrap();
        let quad = LandauQuadrature::new(2, 6.0, 12).unwrap();
        let f = mixture(&model, a, b, w);
        let zero = |_: &Vec3| Vec3::zeros();
        let ex = |_: &Vec3| Vec3::x();
        let ey = |_: &Vec3| Vec3::y();
        let v = |p: &Vec3| model.velocity(p);
        for g in [&zero as &(dyn Fn(&Vec3) -> Vec3 + Sync), &ex, &ey, &v] {
            let wf = landau_weak_form(&f, g, &kernel, &quad).unwrap();
            prop_assert!(wf.relative() <= 1e-8, "{wf:?}");
        }
        let d = landau_dissipation(&f, &kernel, &quad).unwrap();
        prop_assert!(d >= -1e-12, "dissipation {d}");
    }
}
