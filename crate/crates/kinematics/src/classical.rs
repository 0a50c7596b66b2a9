//! Newtonian elastic collisions.

use kinetica_core::{Error, Result, Vec3};

use crate::safe_acos;

/// Post-collision momenta `(p', p*')` for direction `omega`.
pub fn classical_post_collision(p: &Vec3, pstar: &Vec3, omega: &Vec3) -> (Vec3, Vec3) {
    let mid = (p + pstar) * 0.5;
    let half = 0.5 * (p - pstar).norm();
    (mid + omega * half, mid - omega * half)
}

/// Raw deviation angle in `[0, pi]` between `p - p*` and `omega`.
pub fn classical_scattering_angle(p: &Vec3, pstar: &Vec3, omega: &Vec3) -> Result<f64> {
    let u = p - pstar;
    let n = u.norm();
    if n == 0.0 {
        return Err(Error::UndefinedAngle);
    }
    Ok(safe_acos(u.dot(omega) / n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn examples() {
        let p = Vec3::new(1.0, 0.0, 0.0);
        let q = Vec3::new(-1.0, 0.0, 0.0);
        let w = Vec3::new(0.0, 1.0, 0.0);
        let (a, b) = classical_post_collision(&p, &q, &w);
        assert_eq!(a, Vec3::new(0.0, 1.0, 0.0));
        assert_eq!(b, Vec3::new(0.0, -1.0, 0.0));
        let (a, b) = classical_post_collision(&p, &p, &w);
        assert_eq!((a, b), (p, p));
        let r = Vec3::new(0.3, -1.2, 0.0);
        let k = (p - r).normalize();
        let (a, b) = classical_post_collision(&p, &r, &k);
        assert!((a - p).norm() < 1e-15 && (b - r).norm() < 1e-15);
        assert!((classical_scattering_angle(&p, &q, &w).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(classical_scattering_angle(&p, &q, &p).unwrap(), 0.0);
        assert!(classical_scattering_angle(&p, &p, &w).is_err());
    }
}
