//! Physical constants carried by every model.

use crate::{Error, Result};

/// Particle mass, speed of light and the semiclassical parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Particle mass, `m > 0`.
    pub m: f64,
    /// Speed of light, `c > 0`.
    pub c: f64,
    /// Semiclassical parameter in `(0, 1]`, only read by limit sweeps.
    pub hbar: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            m: 1.0,
            c: 1.0,
            hbar: 1.0,
        }
    }
}

impl PhysicalConstants {
    /// Validated constructor.
    pub fn new(m: f64, c: f64, hbar: f64) -> Result<Self> {
        if !(m > 0.0 && m.is_finite()) {
            return Err(Error::Invalid {
                field: "m",
                reason: format!("mass must be positive and finite, got {m}"),
            });
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Invalid {
                field: "c",
                reason: format!("speed of light must be positive and finite, got {c}"),
            });
        }
        if !(hbar > 0.0 && hbar <= 1.0) {
            return Err(Error::Invalid {
                field: "hbar",
                reason: format!("semiclassical parameter must lie in (0, 1], got {hbar}"),
            });
        }
        Ok(Self { m, c, hbar })
    }

    /// Rest momentum `m c`.
    pub fn mc(&self) -> f64 {
        self.m * self.c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_values() {
        assert!(PhysicalConstants::new(0.0, 1.0, 1.0).is_err());
        assert!(PhysicalConstants::new(1.0, -1.0, 1.0).is_err());
        assert!(PhysicalConstants::new(1.0, 1.0, 1.5).is_err());
        assert!(PhysicalConstants::new(2.0, 3.0, 0.5).is_ok());
    }
}
