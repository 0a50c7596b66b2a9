//! Model selection: dynamics, statistics, dimension and constants.

use crate::{Error, PhysicalConstants, Result, Vec3};

/// Energy-momentum relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dynamics {
    /// `e(p) = |p|^2 / (2m)`.
    Classical,
    /// `e(p) = c sqrt((mc)^2 + |p|^2)`.
    Relativistic,
}

/// Collision statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Statistics {
    /// `alpha = 0` Maxwell, `+1` Bose, `-1` Fermi.
    Quantum { alpha: i8 },
    /// Four-wave kinetic equation.
    Wave,
    /// Linear Boltzmann.
    Linear,
}

impl Statistics {
    pub const MAXWELL: Statistics = Statistics::Quantum { alpha: 0 };
    pub const BOSE: Statistics = Statistics::Quantum { alpha: 1 };
    pub const FERMI: Statistics = Statistics::Quantum { alpha: -1 };

    /// Validated quantum statistics.
    pub fn quantum(alpha: i64) -> Result<Self> {
        match alpha {
            -1..=1 => Ok(Statistics::Quantum { alpha: alpha as i8 }),
            _ => Err(Error::Invalid {
                field: "alpha",
                reason: format!("quantum statistics needs alpha in {{-1, 0, 1}}, got {alpha}"),
            }),
        }
    }

    /// Short lowercase label used in reports.
    pub fn label(&self) -> &'static str {
        match self {
            Statistics::Quantum { alpha: 0 } => "maxwell",
            Statistics::Quantum { alpha: 1 } => "bose",
            Statistics::Quantum { .. } => "fermi",
            Statistics::Wave => "wave",
            Statistics::Linear => "linear",
        }
    }
}

/// Full description of the equation being solved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub dynamics: Dynamics,
    pub statistics: Statistics,
    /// Momentum dimension, 2 or 3.
    pub d: usize,
    pub constants: PhysicalConstants,
}

impl ModelSpec {
    /// Validated constructor.
    pub fn new(
        dynamics: Dynamics,
        statistics: Statistics,
        d: usize,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        if d != 2 && d != 3 {
            return Err(Error::Invalid {
                field: "d",
                reason: format!("dimension must be 2 or 3, got {d}"),
            });
        }
        if let Statistics::Quantum { alpha } = statistics {
            Statistics::quantum(alpha as i64)?;
        }
        Ok(Self {
            dynamics,
            statistics,
            d,
            constants,
        })
    }

    /// Classical model with unit constants.
    pub fn classical(statistics: Statistics, d: usize) -> Result<Self> {
        Self::new(Dynamics::Classical, statistics, d, PhysicalConstants::default())
    }

    /// Relativistic model with unit constants.
    pub fn relativistic(statistics: Statistics, d: usize) -> Result<Self> {
        Self::new(
            Dynamics::Relativistic,
            statistics,
            d,
            PhysicalConstants::default(),
        )
    }

    /// Same model with different constants.
    pub fn with_constants(mut self, constants: PhysicalConstants) -> Self {
        self.constants = constants;
        self
    }

    /// Same model with different statistics.
    pub fn with_statistics(mut self, statistics: Statistics) -> Self {
        self.statistics = statistics;
        self
    }

    /// Kinetic energy `e(p)`.
    pub fn energy(&self, p: &Vec3) -> f64 {
        energy(p, self)
    }

    /// Relativistic time component `p0 = sqrt((mc)^2 + |p|^2)`.
    pub fn p0(&self, p: &Vec3) -> f64 {
        let mc = self.constants.mc();
        (mc * mc + p.norm_squared()).sqrt()
    }

    /// Velocity `grad e(p)`.
    pub fn velocity(&self, p: &Vec3) -> Vec3 {
        match self.dynamics {
            Dynamics::Classical => p / self.constants.m,
            Dynamics::Relativistic => p * (self.constants.c / self.p0(p)),
        }
    }

    /// Infimum of the energy over all momenta.
    pub fn min_energy(&self) -> f64 {
        match self.dynamics {
            Dynamics::Classical => 0.0,
            Dynamics::Relativistic => self.constants.mc() * self.constants.c,
        }
    }

    /// Embeds a coordinate slice into a momentum, padding with zeros.
    pub fn momentum(&self, coords: &[f64]) -> Vec3 {
        let mut p = Vec3::zeros();
        for (i, v) in coords.iter().take(self.d).enumerate() {
            p[i] = *v;
        }
        p
    }
}

/// Kinetic energy for the given model.
pub fn energy(p: &Vec3, model: &ModelSpec) -> f64 {
    let k = model.constants;
    match model.dynamics {
        Dynamics::Classical => p.norm_squared() / (2.0 * k.m),
        Dynamics::Relativistic => k.c * model.p0(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Statistics::quantum(2).is_err());
        assert!(ModelSpec::classical(Statistics::MAXWELL, 4).is_err());
    }

    #[test]
    fn energies() {
        let m = ModelSpec::classical(Statistics::MAXWELL, 3).unwrap();
        assert_eq!(m.energy(&Vec3::new(1.0, 2.0, 2.0)), 4.5);
        let r = ModelSpec::relativistic(Statistics::MAXWELL, 3).unwrap();
        assert!((r.energy(&Vec3::new(1.0, 0.0, 0.0)) - 2f64.sqrt()).abs() < 1e-15);
        let v = r.velocity(&Vec3::new(1.0, 0.0, 0.0));
        assert!((v.x - 1.0 / 2f64.sqrt()).abs() < 1e-15);
    }
}
