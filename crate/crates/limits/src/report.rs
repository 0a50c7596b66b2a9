//! Convergence reports shared by every sweep.

/// Errors of a one-parameter sweep with pairwise observed orders.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub parameter: String,
    /// Parameter values in sweep order.
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
    /// Monte Carlo standard errors of `errors`; zero when deterministic.
    pub std_errors: Vec<f64>,
    /// `log(e_i / e_{i+1}) / |log(v_i / v_{i+1})|`, `None` unless both errors are positive.
    pub orders: Vec<Option<f64>>,
    /// Median of the available pairwise orders.
    pub observed_order: Option<f64>,
    pub min_order: f64,
    /// Errors at or below this level count as exact zeros.
    pub zero_tolerance: f64,
    /// Quadrature-noise estimate at the last parameter value, when computed.
    pub floor: Option<f64>,
    pub seed: Option<u64>,
    pub pass: bool,
}

/// Median of a non-empty slice; `None` when empty.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    })
}

/// Pairwise observed orders of consecutive `(value, error)` points.
pub fn pairwise_orders(values: &[f64], errors: &[f64]) -> Vec<Option<f64>> {
    values
        .windows(2)
        .zip(errors.windows(2))
        .map(|(v, e)| {
            if e[0] > 0.0 && e[1] > 0.0 && v[0] != v[1] {
                Some((e[0] / e[1]).ln() / (v[0] / v[1]).ln().abs())
            } else {
                None
            }
        })
        .collect()
}

impl SweepReport {
    /// Builds a report. It passes when every error is below `zero_tolerance`,
    /// or when the errors strictly decrease and the median order reaches
    /// `min_order`.
    pub fn new(
        parameter: impl Into<String>,
        values: Vec<f64>,
        errors: Vec<f64>,
        min_order: f64,
        zero_tolerance: f64,
    ) -> Self {
        assert_eq!(values.len(), errors.len(), "sweep values and errors differ in length");
        let orders = pairwise_orders(&values, &errors);
        let available: Vec<f64> = orders.iter().flatten().copied().collect();
        let observed_order = median(&available);
        let std_errors = vec![0.0; values.len()];
        let mut report = Self {
            parameter: parameter.into(),
            values,
            errors,
            std_errors,
            orders,
            observed_order,
            min_order,
            zero_tolerance,
            floor: None,
            seed: None,
            pass: false,
        };
        report.pass = report.evaluate();
        report
    }

    fn evaluate(&self) -> bool {
        if self.errors.iter().any(|e| !e.is_finite()) {
            return false;
        }
        if self.errors.iter().all(|e| *e <= self.zero_tolerance) {
            return true;
        }
        let decreasing = self.errors.windows(2).all(|e| e[1] < e[0]);
        decreasing && self.observed_order.is_some_and(|o| o >= self.min_order)
    }

    /// Strictly decreasing errors.
    pub fn decreasing(&self) -> bool {
        self.errors.windows(2).all(|e| e[1] < e[0])
    }

    pub fn with_floor(mut self, floor: f64) -> Self {
        self.floor = Some(floor);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_std_errors(mut self, std_errors: Vec<f64>) -> Self {
        assert_eq!(std_errors.len(), self.values.len());
        self.std_errors = std_errors;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_order_sequence() {
        let v = vec![0.8, 0.4, 0.2, 0.1];
        let e: Vec<f64> = v.iter().map(|x| 3.0 * x * x).collect();
        let r = SweepReport::new("epsilon", v, e, 1.8, 0.0);
        assert!((r.observed_order.unwrap() - 2.0).abs() < 1e-12);
        assert!(r.pass);
    }

    #[test]
    fn increasing_parameter_orders() {
        let c = vec![5.0, 10.0, 20.0, 40.0];
        let e: Vec<f64> = c.iter().map(|x| 1.0 / (x * x)).collect();
        let r = SweepReport::new("c", c, e, 1.8, 0.0);
        assert!((r.observed_order.unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zeros_pass_and_stalls_fail() {
        let r = SweepReport::new("h", vec![0.4, 0.2], vec![0.0, 0.0], 0.9, 1e-14);
        assert!(r.pass && r.observed_order.is_none());
        let r = SweepReport::new("h", vec![0.4, 0.2, 0.1], vec![1.0, 0.5, 0.6], 0.9, 0.0);
        assert!(!r.pass);
    }

    #[test]
    fn median_of_even_count() {
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), Some(2.5));
        assert_eq!(median(&[]), None);
    }
}
