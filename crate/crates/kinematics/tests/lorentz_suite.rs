//! Randomized Lorentz-frame audit over masses, speeds of light and dimensions.

use kinetica_core::{PhysicalConstants, Vec3};
use kinetica_kinematics::{
    classical_post_collision, lorentz_audit, lorentz_frame, relativistic_post_collision,
};

#[test]
fn audit_all_combinations() {
    for d in [2, 3] {
        for m in [0.5, 1.0, 2.0] {
            for c in [0.5, 1.0, 2.0] {
                let k = PhysicalConstants::new(m, c, 1.0).unwrap();
                let a = lorentz_audit(&k, d, 10_000, 7).unwrap();
                println!("{a:?}");
                assert!(a.inverse_defect <= 1e-12, "{a:?}");
                assert!(a.boost_defect <= 1e-10, "{a:?}");
                assert!(a.conservation_defect <= 1e-12, "{a:?}");
                assert!(a.on_shell_defect <= 1e-10, "{a:?}");
                assert!(a.angle_cos_defect <= 1e-10, "{a:?}");
                assert!(a.projection_defect <= 1e-10, "{a:?}");
                assert!(a.projection_kernel_defect <= 1e-10, "{a:?}");
            }
        }
    }
}

#[test]
fn newtonian_limit_of_kinematics() {
    let p = Vec3::new(0.7, -0.3, 0.4);
    let q = Vec3::new(-0.2, 0.9, -0.5);
    let omega = Vec3::new(0.3, 0.4, -0.5).normalize();
    let (cp, cq) = classical_post_collision(&p, &q, &omega);
    let mut gaps = Vec::new();
    for c in [5.0, 10.0, 20.0, 40.0] {
        let k = PhysicalConstants::new(1.0, c, 1.0).unwrap();
        let f = lorentz_frame(&p, &q, &k);
        let out = relativistic_post_collision(&p, &q, &omega, &k);
        let g_gap = (f.g - (p - q).norm()).abs();
        let mom_gap = (out.p - cp).norm().max((out.pstar - cq).norm());
        gaps.push((g_gap, mom_gap));
    }
    for w in gaps.windows(2) {
        assert!((w[0].0 / w[1].0).log2() >= 1.8);
        assert!((w[0].1 / w[1].1).log2() >= 1.8);
    }
}
