//! Collision brackets: the parametrized `gamma` rows and the explicit
//! per-statistics integrands.

use kinetica_core::{Error, Result, Statistics};

/// Per-leg parameters `(a, alpha, a_bar, alpha_bar)` of
/// `gamma(f) = a + alpha f` and `gamma_bar(f) = a_bar + alpha_bar f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Leg {
    pub a: i8,
    pub alpha: i8,
    pub a_bar: i8,
    pub alpha_bar: i8,
}

impl Leg {
    const fn new(a: i8, alpha: i8, a_bar: i8, alpha_bar: i8) -> Self {
        Self {
            a,
            alpha,
            a_bar,
            alpha_bar,
        }
    }

    fn gamma(&self, f: f64) -> f64 {
        self.a as f64 + self.alpha as f64 * f
    }

    fn gamma_bar(&self, f: f64) -> f64 {
        self.a_bar as f64 + self.alpha_bar as f64 * f
    }
}

/// Leg parameters for an `n`-body model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaRow {
    pub name: &'static str,
    pub legs: Vec<Leg>,
}

impl GammaRow {
    fn build(name: &'static str, n: usize, first: Leg, rest: Leg) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid {
                field: "n",
                reason: format!("collision rows need n >= 2, got {n}"),
            });
        }
        let mut legs = vec![first];
        legs.extend(std::iter::repeat_n(rest, n - 1));
        Ok(Self { name, legs })
    }

    /// Quantum Boltzmann row: Bose (`+1`), Maxwell (`0`), Fermi (`-1`).
    pub fn quantum(alpha: i8, n: usize) -> Result<Self> {
        let name = match alpha {
            1 => "bose",
            0 => "maxwell",
            -1 => "fermi",
            _ => {
                return Err(Error::Invalid {
                    field: "alpha",
                    reason: format!("alpha must be -1, 0 or 1, got {alpha}"),
                })
            }
        };
        let leg = Leg::new(0, 1, 1, alpha);
        Self::build(name, n, leg, leg)
    }

    /// Wave kinetic row.
    pub fn wave(n: usize) -> Result<Self> {
        Self::build("wave", n, Leg::new(0, 1, 1, 0), Leg::new(0, 1, 0, 1))
    }

    /// Linear Boltzmann row.
    pub fn linear(n: usize) -> Result<Self> {
        Self::build("linear", n, Leg::new(0, 1, 1, 0), Leg::new(1, 0, 1, 0))
    }

    /// Row matching a statistics tag.
    pub fn for_statistics(statistics: Statistics, n: usize) -> Result<Self> {
        match statistics {
            Statistics::Quantum { alpha } => Self::quantum(alpha, n),
            Statistics::Wave => Self::wave(n),
            Statistics::Linear => Self::linear(n),
        }
    }

    pub fn n(&self) -> usize {
        self.legs.len()
    }

    fn is_fermi(&self) -> bool {
        self.legs.iter().any(|l| l.alpha_bar == -1)
    }

    /// Sum over the transpositions `tau_k = (0 k)` of
    /// `prod gamma_i(f'_{tau(i)}) gamma_bar_i(f_{tau(i)}) - prod gamma_bar_i(f'_{tau(i)}) gamma_i(f_{tau(i)})`.
    ///
    /// `values` holds `(f_0, .., f_{n-1}, f'_0, .., f'_{n-1})`.
    pub fn bracket(&self, values: &[f64]) -> Result<f64> {
        let n = self.n();
        if values.len() != 2 * n {
            return Err(Error::Invalid {
                field: "values",
                reason: format!("expected {} values, got {}", 2 * n, values.len()),
            });
        }
        for v in values {
            if !(*v >= 0.0) || (self.is_fermi() && *v > 1.0) {
                return Err(Error::Domain(format!(
                    "value {v} lies outside the domain of the {} row",
                    self.name
                )));
            }
        }
        let (pre, post) = values.split_at(n);
        let mut total = 0.0;
        for k in 0..n {
            let tau = |i: usize| {
                if i == 0 {
                    k
                } else if i == k {
                    0
                } else {
                    i
                }
            };
            let mut gain = 1.0;
            let mut loss = 1.0;
            for (i, leg) in self.legs.iter().enumerate() {
                let j = tau(i);
                gain *= leg.gamma(post[j]) * leg.gamma_bar(pre[j]);
                loss *= leg.gamma_bar(post[j]) * leg.gamma(pre[j]);
            }
            total += gain - loss;
        }
        Ok(total)
    }
}

/// Two-body `q_0 + q_1` for `(f, f*, f', f*')`.
pub fn collision_integrand(values: [f64; 4], row: &GammaRow) -> Result<f64> {
    if row.n() != 2 {
        return Err(Error::Invalid {
            field: "row",
            reason: "the collision integrand is two-body".into(),
        });
    }
    row.bracket(&values)
}

/// Quantum bracket `f'f*'(1+a f)(1+a f*) - f f*(1+a f')(1+a f*')` for real `a`.
#[inline]
pub fn quantum_bracket(alpha: f64, f: f64, fs: f64, fp: f64, fsp: f64) -> f64 {
    fp * fsp * (1.0 + alpha * f) * (1.0 + alpha * fs) - f * fs * (1.0 + alpha * fp) * (1.0 + alpha * fsp)
}

/// Explicit two-body integrand of the collision operator.
///
/// Quantum rows give half the `tau`-sum, the wave and linear rows give the
/// full `tau`-sum; in every case the result equals `(Psi*)'(grad h') Theta`
/// for the corresponding weight triple.
#[inline]
pub fn statistics_bracket(statistics: Statistics, f: f64, fs: f64, fp: f64, fsp: f64) -> f64 {
    match statistics {
        Statistics::Quantum { alpha } => quantum_bracket(alpha as f64, f, fs, fp, fsp),
        Statistics::Wave => fp * fsp * (f + fs) - f * fs * (fp + fsp),
        Statistics::Linear => fp + fsp - f - fs,
    }
}
