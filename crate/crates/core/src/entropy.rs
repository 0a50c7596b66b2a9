//! Entropy densities `h`, their derivatives and the inverse of `h'`.
//!
//! Quantum: `h = f log f - (1/alpha)(1 + alpha f) log(1 + alpha f)`, with the
//! Maxwell case `f log f - f`. Wave: `h = -log f`. Linear: `h = f^2 / 2`.

use crate::{Error, Result, Statistics};

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Entropy density `h(f)`. Fermi returns `+inf` for `f > 1`.
pub fn entropy_density(f: f64, statistics: Statistics) -> Result<f64> {
    if f.is_nan() || f < 0.0 {
        return Err(Error::Domain(format!("entropy density needs f >= 0, got {f}")));
    }
    Ok(match statistics {
        Statistics::Quantum { alpha: 0 } => xlogx(f) - f,
        Statistics::Quantum { alpha: 1 } => xlogx(f) - xlogx(1.0 + f),
        Statistics::Quantum { .. } => {
            if f > 1.0 {
                f64::INFINITY
            } else {
                xlogx(f) + xlogx(1.0 - f)
            }
        }
        Statistics::Wave => -f.ln(),
        Statistics::Linear => 0.5 * f * f,
    })
}

/// Quantum entropy derivative `log(f / (1 + alpha f))` for real `alpha`.
pub fn quantum_entropy_prime(f: f64, alpha: f64) -> f64 {
    (f / (1.0 + alpha * f)).ln()
}

/// First derivative `h'(f)`; may be infinite at the domain boundary.
pub fn entropy_prime(f: f64, statistics: Statistics) -> f64 {
    match statistics {
        Statistics::Quantum { alpha } => quantum_entropy_prime(f, alpha as f64),
        Statistics::Wave => -1.0 / f,
        Statistics::Linear => f,
    }
}

/// Second derivative `h''(f)`.
pub fn entropy_second(f: f64, statistics: Statistics) -> f64 {
    match statistics {
        Statistics::Quantum { alpha } => 1.0 / (f * (1.0 + alpha as f64 * f)),
        Statistics::Wave => 1.0 / (f * f),
        Statistics::Linear => 1.0,
    }
}

/// Inverse of `h'`: the `f` with `h'(f) = xi`.
///
/// Wave statistics needs `xi < 0`; outside the range of `h'` the result is NaN.
pub fn entropy_prime_inverse(xi: f64, statistics: Statistics) -> f64 {
    match statistics {
        Statistics::Quantum { alpha } => 1.0 / ((-xi).exp() - alpha as f64),
        Statistics::Wave => {
            if xi < 0.0 {
                -1.0 / xi
            } else {
                f64::NAN
            }
        }
        Statistics::Linear => xi,
    }
}

/// Entropy model bound to a statistics tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyModel {
    pub statistics: Statistics,
}

impl EntropyModel {
    pub fn new(statistics: Statistics) -> Self {
        Self { statistics }
    }

    pub fn h(&self, f: f64) -> Result<f64> {
        entropy_density(f, self.statistics)
    }

    pub fn h_prime(&self, f: f64) -> f64 {
        entropy_prime(f, self.statistics)
    }

    pub fn h_second(&self, f: f64) -> f64 {
        entropy_second(f, self.statistics)
    }

    pub fn h_prime_inverse(&self, xi: f64) -> f64 {
        entropy_prime_inverse(xi, self.statistics)
    }

    /// Whether `f` lies in the closed domain of `h`.
    pub fn in_domain(&self, f: f64) -> bool {
        match self.statistics {
            Statistics::Quantum { alpha: -1 } => (0.0..=1.0).contains(&f),
            Statistics::Wave => f > 0.0,
            _ => f >= 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let b = entropy_density(1.0, Statistics::BOSE).unwrap();
        assert!((b + 2.0 * 2f64.ln()).abs() < 1e-15);
        assert_eq!(entropy_density(1.0, Statistics::Wave).unwrap(), 0.0);
        assert_eq!(
            entropy_density(1.2, Statistics::FERMI).unwrap(),
            f64::INFINITY
        );
        assert_eq!(entropy_density(1.0, Statistics::MAXWELL).unwrap(), -1.0);
        assert!(entropy_density(-0.1, Statistics::MAXWELL).is_err());
        for s in [Statistics::MAXWELL, Statistics::BOSE, Statistics::FERMI] {
            assert_eq!(entropy_density(0.0, s).unwrap(), 0.0);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let stats = [
            Statistics::MAXWELL,
            Statistics::BOSE,
            Statistics::FERMI,
            Statistics::Wave,
            Statistics::Linear,
        ];
        for s in stats {
            for f in [0.1, 0.3, 0.7] {
                let h = 1e-6;
                let fd = (entropy_density(f + h, s).unwrap() - entropy_density(f - h, s).unwrap())
                    / (2.0 * h);
                assert!((fd - entropy_prime(f, s)).abs() < 1e-7, "{s:?} {f}");
                let fd2 = (entropy_prime(f + h, s) - entropy_prime(f - h, s)) / (2.0 * h);
                assert!((fd2 - entropy_second(f, s)).abs() < 1e-5 * fd2.abs().max(1.0));
                let back = entropy_prime_inverse(entropy_prime(f, s), s);
                assert!((back - f).abs() < 1e-12);
            }
        }
    }
}
