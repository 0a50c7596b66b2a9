//! Weight triples `(Psi*, Theta, h)` and the compatibility check
//! `n (Psi*)'(grad h') Theta = kappa^{-1} sum_k bracket_k`.

use kinetica_core::{
    entropy_prime, logarithmic_mean, node_rng, psi_star_prime, DissipationKind, Error, Result,
    Statistics,
};
use rand::Rng;

use crate::rows::GammaRow;

/// Weight function `Theta` over `(f_0..f_{n-1}, f'_0..f'_{n-1})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThetaKind {
    /// `prod sqrt(f_i f_i' (1 + a f_i)(1 + a f_i'))`, closing the cosh identity.
    QuantumCosh { alpha: f64 },
    /// `prod sqrt(f_i)`, kept to show that it does not close for general tuples.
    ProductRoot,
    /// `L(prod f_i'(1 + a f_i), prod f_i (1 + a f_i'))`.
    LogMean { alpha: f64 },
    /// `prod f_i f_i'`.
    WaveProduct,
    /// `1`.
    One,
}

impl ThetaKind {
    /// `Theta` at a `2n`-tuple.
    pub fn eval(&self, values: &[f64]) -> Result<f64> {
        let n = values.len() / 2;
        let (pre, post) = values.split_at(n);
        Ok(match *self {
            ThetaKind::QuantumCosh { alpha } => pre
                .iter()
                .zip(post)
                .map(|(f, fp)| (f * fp * (1.0 + alpha * f) * (1.0 + alpha * fp)).sqrt())
                .product(),
            ThetaKind::ProductRoot => pre.iter().map(|f| f.sqrt()).product(),
            ThetaKind::LogMean { alpha } => {
                let (gain, loss) = gain_loss(alpha, pre, post);
                logarithmic_mean(gain, loss)?
            }
            ThetaKind::WaveProduct => pre.iter().zip(post).map(|(f, fp)| f * fp).product(),
            ThetaKind::One => 1.0,
        })
    }
}

fn gain_loss(alpha: f64, pre: &[f64], post: &[f64]) -> (f64, f64) {
    let gain = pre
        .iter()
        .zip(post)
        .map(|(f, fp)| fp * (1.0 + alpha * f))
        .product();
    let loss = pre
        .iter()
        .zip(post)
        .map(|(f, fp)| f * (1.0 + alpha * fp))
        .product();
    (gain, loss)
}

/// A dissipation potential, weight and entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightTriple {
    pub psi: DissipationKind,
    pub theta: ThetaKind,
    pub statistics: Statistics,
}

impl WeightTriple {
    /// Cosh potential with the quantum weight that closes the identity.
    pub fn quantum_cosh(alpha: i8) -> Self {
        Self {
            psi: DissipationKind::Cosh,
            theta: ThetaKind::QuantumCosh {
                alpha: alpha as f64,
            },
            statistics: Statistics::Quantum { alpha },
        }
    }

    /// Quadratic potential with the logarithmic-mean weight.
    pub fn quantum_log_mean(alpha: i8) -> Self {
        Self {
            psi: DissipationKind::Quadratic,
            theta: ThetaKind::LogMean {
                alpha: alpha as f64,
            },
            statistics: Statistics::Quantum { alpha },
        }
    }

    pub fn wave() -> Self {
        Self {
            psi: DissipationKind::Quadratic,
            theta: ThetaKind::WaveProduct,
            statistics: Statistics::Wave,
        }
    }

    pub fn linear() -> Self {
        Self {
            psi: DissipationKind::Quadratic,
            theta: ThetaKind::One,
            statistics: Statistics::Linear,
        }
    }

    /// Default triple for a statistics tag (cosh for quantum rows).
    pub fn for_statistics(statistics: Statistics) -> Self {
        match statistics {
            Statistics::Quantum { alpha } => Self::quantum_cosh(alpha),
            Statistics::Wave => Self::wave(),
            Statistics::Linear => Self::linear(),
        }
    }

    /// Free discrete gradient of `h'` over a `2n`-tuple.
    pub fn free_gradient(&self, values: &[f64]) -> f64 {
        let n = values.len() / 2;
        let (pre, post) = values.split_at(n);
        pre.iter()
            .zip(post)
            .map(|(f, fp)| entropy_prime(*fp, self.statistics) - entropy_prime(*f, self.statistics))
            .sum()
    }

    /// `(Psi*)'(grad h') Theta`.
    pub fn flux(&self, values: &[f64]) -> Result<f64> {
        Ok(psi_star_prime(self.free_gradient(values), self.psi) * self.theta.eval(values)?)
    }
}

/// Left side `L = n (Psi*)'(grad h') Theta` and right side `R` (the bracket sum).
pub fn compatibility_sides(values: &[f64], row: &GammaRow, triple: &WeightTriple) -> Result<(f64, f64)> {
    let n = row.n() as f64;
    let l = n * triple.flux(values)?;
    let r = row.bracket(values)?;
    Ok((l, r))
}

/// Residual `|R - kappa L| / (|R| + |L| + 1)` and the calibration constant.
///
/// When `kappa` is `None` it is calibrated as `R / L` at this tuple.
pub fn compatibility_residual(
    values: &[f64],
    row: &GammaRow,
    triple: &WeightTriple,
    kappa: Option<f64>,
) -> Result<(f64, f64)> {
    let (l, r) = compatibility_sides(values, row, triple)?;
    if l == 0.0 && r != 0.0 {
        return Err(Error::Incompatible(r.abs()));
    }
    let kappa = match kappa {
        Some(k) => k,
        None if l == 0.0 => 1.0,
        None => r / l,
    };
    Ok(((r - kappa * l).abs() / (r.abs() + l.abs() + 1.0), kappa))
}

/// Outcome of a compatibility sweep for one `(row, triple, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompatibilityReport {
    pub row: &'static str,
    pub triple: &'static str,
    pub n: usize,
    pub kappa: f64,
    pub max_residual: f64,
    /// Largest `|R/L - kappa|` over tuples with `|L|` above roundoff.
    pub kappa_spread: f64,
    pub tuples: usize,
}

/// Named rows and triples checked by the suite.
pub fn suite_cases(n: usize) -> Result<Vec<(GammaRow, &'static str, WeightTriple)>> {
    let mut out = Vec::new();
    for alpha in [0i8, 1, -1] {
        out.push((GammaRow::quantum(alpha, n)?, "cosh", WeightTriple::quantum_cosh(alpha)));
        out.push((
            GammaRow::quantum(alpha, n)?,
            "log-mean",
            WeightTriple::quantum_log_mean(alpha),
        ));
    }
    out.push((GammaRow::wave(n)?, "quadratic", WeightTriple::wave()));
    out.push((GammaRow::linear(n)?, "quadratic", WeightTriple::linear()));
    Ok(out)
}

fn random_tuple(rng: &mut impl Rng, n: usize, fermi: bool) -> Vec<f64> {
    (0..2 * n)
        .map(|_| {
            if fermi {
                0.02 + 0.96 * rng.gen::<f64>()
            } else {
                0.05 + 2.95 * rng.gen::<f64>()
            }
        })
        .collect()
}

/// Calibrates `kappa` on one random tuple and checks `tuples` more.
pub fn compatibility_sweep(
    row: &GammaRow,
    triple_name: &'static str,
    triple: &WeightTriple,
    tuples: usize,
    seed: u64,
) -> Result<CompatibilityReport> {
    let n = row.n();
    let fermi = triple.statistics == Statistics::FERMI;
    let mut rng = node_rng(seed, n as u64);
    let first = random_tuple(&mut rng, n, fermi);
    let (_, kappa) = compatibility_residual(&first, row, triple, None)?;
    let mut max_residual: f64 = 0.0;
    let mut spread: f64 = 0.0;
    for _ in 0..tuples {
        let t = random_tuple(&mut rng, n, fermi);
        let (res, _) = compatibility_residual(&t, row, triple, Some(kappa))?;
        max_residual = max_residual.max(res);
        let (l, r) = compatibility_sides(&t, row, triple)?;
        if l.abs() > 1e-8 * (1.0 + r.abs()) {
            spread = spread.max((r / l - kappa).abs());
        }
    }
    Ok(CompatibilityReport {
        row: row.name,
        triple: triple_name,
        n,
        kappa,
        max_residual,
        kappa_spread: spread,
        tuples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: [f64; 4] = [1.0, 2.0, 3.0, 4.0];

    #[test]
    fn hand_evaluated_oracles() {
        let row = GammaRow::quantum(0, 2).unwrap();
        let (l, r) = compatibility_sides(&T, &row, &WeightTriple::quantum_cosh(0)).unwrap();
        assert!((l - 20.0).abs() < 1e-12 && r == 20.0);
        let (l, _) = compatibility_sides(&T, &row, &WeightTriple::quantum_log_mean(0)).unwrap();
        assert!((l - 20.0).abs() < 1e-12);
        let (l, r) = compatibility_sides(&T, &GammaRow::wave(2).unwrap(), &WeightTriple::wave()).unwrap();
        assert!((l - 44.0).abs() < 1e-12 && r == 22.0);
        let (res, kappa) =
            compatibility_residual(&T, &GammaRow::wave(2).unwrap(), &WeightTriple::wave(), None).unwrap();
        assert!((kappa - 0.5).abs() < 1e-15 && res == 0.0);
    }

    #[test]
    fn printed_root_weight_does_not_close_for_bose() {
        let row = GammaRow::quantum(1, 2).unwrap();
        let printed = WeightTriple {
            theta: ThetaKind::ProductRoot,
            ..WeightTriple::quantum_cosh(1)
        };
        let (_, kappa) = compatibility_residual(&T, &row, &printed, None).unwrap();
        let other = [0.4, 1.3, 2.2, 0.7];
        let (res, _) = compatibility_residual(&other, &row, &printed, Some(kappa)).unwrap();
        assert!(res > 1e-3);
    }
}
