//! Logarithmic mean `(s - t) / (log s - log t)`.

use crate::{Error, Result};

/// Relative gap below which the series expansion replaces the quotient.
const SERIES_GAP: f64 = 1e-8;

/// Logarithmic mean of two positive numbers.
pub fn logarithmic_mean(s: f64, t: f64) -> Result<f64> {
    if !(s > 0.0 && t > 0.0) || !s.is_finite() || !t.is_finite() {
        return Err(Error::Domain(format!(
            "logarithmic mean needs positive finite arguments, got ({s}, {t})"
        )));
    }
    let hi = s.max(t);
    if (s - t).abs() < SERIES_GAP * hi {
        // with a = (s+t)/2 and r = (s-t)/(s+t): a (1 - r^2/3 - 4 r^4/45)
        let a = 0.5 * (s + t);
        let r = (s - t) / (s + t);
        let r2 = r * r;
        return Ok(a * (1.0 - r2 / 3.0 - 4.0 * r2 * r2 / 45.0));
    }
    // ordered so log1p sees a positive ratio: accurate for nearby arguments,
    // free of cancellation for far ones, and symmetric by construction
    let lo = s.min(t);
    Ok((hi - lo) / ((hi - lo) / lo).ln_1p())
}
