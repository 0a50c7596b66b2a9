//! Dual dissipation potentials `Psi*` and their derivatives.

/// Shape of the dual dissipation potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DissipationKind {
    /// `Psi*(r) = r^2 / 2`.
    Quadratic,
    /// `Psi*(r) = 4 (cosh(r/2) - 1)`.
    Cosh,
}

/// `Psi*(r)`.
pub fn psi_star(r: f64, kind: DissipationKind) -> f64 {
    match kind {
        DissipationKind::Quadratic => 0.5 * r * r,
        DissipationKind::Cosh => {
            // 4 (cosh(x) - 1) = 8 sinh(x/2)^2, accurate near zero
            let s = (0.25 * r).sinh();
            8.0 * s * s
        }
    }
}

/// `(Psi*)'(r)`.
pub fn psi_star_prime(r: f64, kind: DissipationKind) -> f64 {
    match kind {
        DissipationKind::Quadratic => r,
        DissipationKind::Cosh => 2.0 * (0.5 * r).sinh(),
    }
}

/// A dissipation potential bound to its kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DissipationPair {
    pub kind: DissipationKind,
}

impl DissipationPair {
    pub fn new(kind: DissipationKind) -> Self {
        Self { kind }
    }

    pub fn psi_star(&self, r: f64) -> f64 {
        psi_star(r, self.kind)
    }

    pub fn psi_star_prime(&self, r: f64) -> f64 {
        psi_star_prime(r, self.kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(psi_star(0.0, DissipationKind::Cosh), 0.0);
        assert_eq!(psi_star_prime(0.0, DissipationKind::Cosh), 0.0);
        let v = psi_star_prime(6f64.ln(), DissipationKind::Cosh);
        assert!((v - 5.0 / 6f64.sqrt()).abs() < 1e-14);
        assert_eq!(psi_star(3.0, DissipationKind::Quadratic), 4.5);
        assert_eq!(psi_star_prime(3.0, DissipationKind::Quadratic), 3.0);
        let c = psi_star(2.0, DissipationKind::Cosh);
        assert!((c - 4.0 * (1f64.cosh() - 1.0)).abs() < 1e-14);
    }
}
