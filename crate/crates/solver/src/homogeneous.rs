//! Spatially homogeneous time integration with conservation and entropy
//! monitors.

use kinetica_core::{Error, ModelSpec, Moments, Result, Vec3};
use nalgebra::{DMatrix, DVector};

use crate::grid::MomentumGrid;
use crate::operator::CollisionOperator;

/// Nodal values of `f` at a time.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub time: f64,
    pub values: Vec<f64>,
}

/// Monitored quantities of one recorded state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonitorRecord {
    pub step: usize,
    pub time: f64,
    pub mass: f64,
    pub momentum: Vec3,
    pub energy: f64,
    pub entropy: f64,
    pub dissipation: f64,
    /// Mass removed by clipping negative values in the step that produced this state.
    pub clipped: f64,
}

/// Per-step monitor records with strictly increasing times.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MonitorSeries {
    pub records: Vec<MonitorRecord>,
}

impl MonitorSeries {
    pub fn first(&self) -> Option<&MonitorRecord> {
        self.records.first()
    }

    pub fn last(&self) -> Option<&MonitorRecord> {
        self.records.last()
    }

    pub fn max_clip(&self) -> f64 {
        self.records.iter().fold(0.0, |a, r| a.max(r.clipped))
    }
}

/// Tolerances enforced during a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonitorPolicy {
    /// Relative drift allowed for mass, momentum and energy.
    pub moment_tolerance: f64,
    /// Per-step entropy increase allowed, relative to `|H|`.
    pub entropy_tolerance: f64,
    /// Clipped mass allowed per step, relative to the mass.
    pub clip_tolerance: f64,
    /// Bound on `dt max|Q| / max f`.
    pub cfl: f64,
    /// Restore the initial moments after every step by the smallest
    /// weighted L2 correction. Off by default: conservation is monitored,
    /// not enforced.
    pub correct_moments: bool,
}

impl Default for MonitorPolicy {
    fn default() -> Self {
        Self {
            moment_tolerance: 1e-6,
            entropy_tolerance: 1e-10,
            clip_tolerance: 1e-8,
            cfl: 0.5,
            correct_moments: false,
        }
    }
}

/// Clips negative values to zero and returns the removed mass.
pub fn clip_negative(values: &mut [f64], weight: f64) -> f64 {
    let mut clipped = 0.0;
    for v in values.iter_mut() {
        if *v < 0.0 {
            clipped -= *v * weight;
            *v = 0.0;
        }
    }
    clipped
}

/// Adds the smallest weighted L2 combination of `1, p, e` to `values` that
/// restores the moments `target`.
pub fn correct_moments(grid: &MomentumGrid, model: &ModelSpec, values: &mut [f64], target: &Moments) {
    let d = grid.d;
    let k = d + 2;
    let basis = |p: &Vec3| -> Vec<f64> {
        let mut b = vec![1.0];
        b.extend((0..d).map(|a| p[a]));
        b.push(model.energy(p));
        b
    };
    let w = grid.weight();
    let mut gram = DMatrix::<f64>::zeros(k, k);
    for p in &grid.points {
        let b = basis(p);
        for r in 0..k {
            for c in 0..k {
                gram[(r, c)] += w * b[r] * b[c];
            }
        }
    }
    let now = grid.moments(model, values);
    let mut rhs = DVector::<f64>::zeros(k);
    rhs[0] = target.mass - now.mass;
    for a in 0..d {
        rhs[1 + a] = target.momentum[a] - now.momentum[a];
    }
    rhs[k - 1] = target.energy - now.energy;
    let Some(c) = gram.lu().solve(&rhs) else {
        return;
    };
    for (v, p) in values.iter_mut().zip(&grid.points) {
        *v += basis(p).iter().zip(c.iter()).map(|(b, c)| b * c).sum::<f64>();
    }
}

/// Checks `dt max|Q| / max f <= bound` and suggests a step when violated.
pub fn check_cfl(q: &[f64], f: &[f64], dt: f64, bound: f64) -> Result<()> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Invalid {
            field: "dt",
            reason: format!("time step must be positive, got {dt}"),
        });
    }
    let qmax = q.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let fmax = f.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if fmax == 0.0 || qmax == 0.0 {
        return Ok(());
    }
    if dt * qmax / fmax > bound {
        return Err(Error::Cfl {
            suggested: 0.9 * bound * fmax / qmax,
        });
    }
    Ok(())
}

fn axpy(f: &[f64], k: &[f64], a: f64) -> Vec<f64> {
    f.iter().zip(k).map(|(x, y)| x + a * y).collect()
}

/// One RK4 step from `state` given `q0 = Q(state)`; returns the unclipped values.
fn rk4(op: &CollisionOperator, f: &[f64], q0: &[f64], dt: f64) -> Result<Vec<f64>> {
    let k2 = op.evaluate(&axpy(f, q0, 0.5 * dt))?.q;
    let k3 = op.evaluate(&axpy(f, &k2, 0.5 * dt))?.q;
    let k4 = op.evaluate(&axpy(f, &k3, dt))?.q;
    Ok((0..f.len())
        .map(|i| f[i] + dt / 6.0 * (q0[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect())
}

/// Largest real stability interval of classical RK4, with a margin.
pub const RK4_STABILITY: f64 = 2.5;

/// Power-iteration estimate of the spectral radius of the Jacobian of `Q`
/// at `f`, with finite-difference Jacobian products from a fixed start.
pub fn spectral_radius(op: &CollisionOperator, f: &[f64], iterations: usize) -> Result<f64> {
    let q0 = op.evaluate(f)?.q;
    let fmax = f.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(f64::MIN_POSITIVE);
    let eps = 1e-6 * fmax;
    let mut v: Vec<f64> = (0..f.len()).map(|i| ((i * 7919) % 13) as f64 - 6.0).collect();
    let mut rho = 0.0;
    for _ in 0..iterations {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Ok(rho);
        }
        let g: Vec<f64> = f.iter().zip(&v).map(|(a, b)| a + eps * b / norm).collect();
        let q = op.evaluate(&g)?.q;
        v = q.iter().zip(&q0).map(|(a, b)| (a - b) / eps).collect();
        rho = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    }
    Ok(rho)
}

/// Result of one step: the new state and the clipped mass.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub state: State,
    pub clipped: f64,
}

/// One RK4 step of `df/dt = Q(f)` followed by clipping at zero.
pub fn step(op: &CollisionOperator, state: &State, dt: f64, policy: &MonitorPolicy) -> Result<StepOutcome> {
    let q0 = op.evaluate(&state.values)?.q;
    check_cfl(&q0, &state.values, dt, policy.cfl)?;
    step_from(op, state, &q0, dt)
}

fn step_from(op: &CollisionOperator, state: &State, q0: &[f64], dt: f64) -> Result<StepOutcome> {
    let mut values = rk4(op, &state.values, q0, dt)?;
    let clipped = clip_negative(&mut values, op.grid().weight());
    Ok(StepOutcome {
        state: State {
            time: state.time + dt,
            values,
        },
        clipped,
    })
}

fn record(op: &CollisionOperator, step: usize, state: &State, dissipation: f64, clipped: f64) -> Result<MonitorRecord> {
    let grid = op.grid();
    let m = grid.moments(op.model(), &state.values);
    Ok(MonitorRecord {
        step,
        time: state.time,
        mass: m.mass,
        momentum: m.momentum,
        energy: m.energy,
        entropy: grid.entropy(op.model(), &state.values)?,
        dissipation,
        clipped,
    })
}

/// Scales for relative drift: `(mass, sum w f |p|, |energy|)` of the initial state.
fn drift_scales(op: &CollisionOperator, r: &MonitorRecord, values: &[f64]) -> (f64, f64, f64) {
    let pscale = op.grid().momentum_scale(values);
    (r.mass.abs(), pscale, r.energy.abs())
}

fn check_record(
    step: usize,
    r: &MonitorRecord,
    prev: &MonitorRecord,
    first: &MonitorRecord,
    scales: (f64, f64, f64),
    policy: &MonitorPolicy,
) -> Result<()> {
    let tol = policy.moment_tolerance;
    let rel = |x: f64, s: f64| if s > 0.0 { x / s } else { x };
    let dm = rel((r.mass - first.mass).abs(), scales.0);
    let dp = rel((r.momentum - first.momentum).norm(), scales.1);
    let de = rel((r.energy - first.energy).abs(), scales.2);
    let fail = |detail: String| Err(Error::Monitor { step, detail });
    if dm > tol || dp > tol || de > tol {
        return fail(format!(
            "moment drift at t = {}: mass {dm:.3e}, momentum {dp:.3e}, energy {de:.3e} (tolerance {tol:e})",
            r.time
        ));
    }
    let rise = r.entropy - prev.entropy;
    if rise > policy.entropy_tolerance * prev.entropy.abs() {
        return fail(format!(
            "entropy increased by {rise:.3e} at t = {} (H = {})",
            r.time, prev.entropy
        ));
    }
    if r.clipped > policy.clip_tolerance * scales.0.max(f64::MIN_POSITIVE) {
        return fail(format!("clipped mass {:.3e} at t = {}", r.clipped, r.time));
    }
    Ok(())
}

/// Integrates to `t_end` with steps of at most `dt`, recording monitors at
/// every step and aborting on the first violated monitor.
///
/// Besides the per-step amplitude bound, the step is checked once against
/// the spectral radius of the linearized operator at the initial state,
/// since collision operators near equilibrium are stiff while `Q` is small.
pub fn run(
    op: &CollisionOperator,
    initial: &State,
    t_end: f64,
    dt: f64,
    policy: &MonitorPolicy,
) -> Result<(State, MonitorSeries)> {
    if !(t_end > initial.time) {
        return Err(Error::Invalid {
            field: "t_end",
            reason: format!("must exceed the initial time {}, got {t_end}", initial.time),
        });
    }
    if !(dt > 0.0) {
        return Err(Error::Invalid {
            field: "dt",
            reason: format!("time step must be positive, got {dt}"),
        });
    }
    let span = t_end - initial.time;
    let steps = (span / dt - 1e-9).ceil().max(1.0) as usize;
    let h = span / steps as f64;
    let mut state = initial.clone();
    let mut series = MonitorSeries::default();
    let mut eval = op.evaluate(&state.values)?;
    let rho = spectral_radius(op, &state.values, 30)?;
    if h * rho > RK4_STABILITY {
        return Err(Error::Cfl {
            suggested: 0.9 * RK4_STABILITY / rho,
        });
    }
    let first = record(op, 0, &state, eval.dissipation, 0.0)?;
    let scales = drift_scales(op, &first, &state.values);
    let target = op.grid().moments(op.model(), &state.values);
    series.records.push(first);
    for n in 1..=steps {
        check_cfl(&eval.q, &state.values, h, policy.cfl).map_err(|e| match e {
            Error::Cfl { suggested } => Error::Monitor {
                step: n,
                detail: format!("time step exceeds stability bound, suggested dt = {suggested}"),
            },
            e => e,
        })?;
        let out = step_from(op, &state, &eval.q, h)?;
        state = out.state;
        if policy.correct_moments {
            correct_moments(op.grid(), op.model(), &mut state.values, &target);
        }
        state.time = initial.time + n as f64 * h;
        eval = op.evaluate(&state.values)?;
        let r = record(op, n, &state, eval.dissipation, out.clipped)?;
        check_record(n, &r, series.last().expect("seeded"), &first, scales, policy)?;
        series.records.push(r);
    }
    Ok((state, series))
}

/// Fixed-horizon step-doubling check: errors `|u_dt - u_{dt/2}|` and
/// `|u_{dt/2} - u_{dt/4}|` in the weighted L1 norm, and their ratio
/// (16 for a fourth-order scheme).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepDoubling {
    pub dt: f64,
    pub coarse: f64,
    pub fine: f64,
    pub ratio: f64,
}

pub fn step_doubling(op: &CollisionOperator, initial: &State, horizon: f64, dt: f64) -> Result<StepDoubling> {
    let integrate = |h: f64| -> Result<Vec<f64>> {
        let steps = (horizon / h).round() as usize;
        let mut s = initial.clone();
        for _ in 0..steps {
            let q0 = op.evaluate(&s.values)?.q;
            s = State {
                time: s.time + h,
                values: rk4(op, &s.values, &q0, h)?,
            };
        }
        Ok(s.values)
    };
    let (a, b, c) = (integrate(dt)?, integrate(dt / 2.0)?, integrate(dt / 4.0)?);
    let w = op.grid().weight();
    let l1 = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(u, v)| (u - v).abs()).sum::<f64>() * w;
    let (coarse, fine) = (l1(&a, &b), l1(&b, &c));
    Ok(StepDoubling {
        dt,
        coarse,
        fine,
        ratio: coarse / fine,
    })
}

/// First and second law audit of a completed run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenericAudit {
    /// `max |E(t) - E(0)| / |E(0)|`.
    pub energy_drift: f64,
    /// `min -(H_{n+1} - H_n) / dt_n`, scaled by `|H(0)|`.
    pub min_entropy_production: f64,
    pub pass: bool,
}

/// Energy drift and minimal entropy production over the records.
pub fn generic_energy_entropy_audit(series: &MonitorSeries, energy_tolerance: f64) -> GenericAudit {
    let Some(first) = series.first() else {
        return GenericAudit {
            energy_drift: 0.0,
            min_entropy_production: 0.0,
            pass: true,
        };
    };
    let e0 = first.energy.abs().max(f64::MIN_POSITIVE);
    let h0 = first.entropy.abs().max(f64::MIN_POSITIVE);
    let energy_drift = series
        .records
        .iter()
        .fold(0.0f64, |a, r| a.max((r.energy - first.energy).abs() / e0));
    let min_entropy_production = series
        .records
        .windows(2)
        .map(|w| -(w[1].entropy - w[0].entropy) / (w[1].time - w[0].time) / h0)
        .fold(f64::INFINITY, f64::min);
    let min_entropy_production = if min_entropy_production.is_finite() {
        min_entropy_production
    } else {
        0.0
    };
    GenericAudit {
        energy_drift,
        min_entropy_production,
        pass: energy_drift <= energy_tolerance && min_entropy_production >= -1e-10,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kinetica_core::Statistics;
    use kinetica_kernels::KernelSpec;

    #[test]
    fn equilibrium_is_left_unchanged() {
        let model = ModelSpec::classical(Statistics::MAXWELL, 2).unwrap();
        let kernel = KernelSpec::default_for(model).unwrap();
        let grid = MomentumGrid::new(2, 4.0, 10).unwrap();
        let op = CollisionOperator::landau(grid.clone(), &kernel).unwrap();
        let values: Vec<f64> = grid.points.iter().map(|p| (-0.5 * p.norm_squared()).exp()).collect();
        let s = State { time: 0.0, values };
        assert!(matches!(run(&op, &s, 0.5, 0.1, &MonitorPolicy::default()), Err(Error::Cfl { .. })));
        let (out, series) = run(&op, &s, 0.5, 0.004, &MonitorPolicy::default()).unwrap();
        let diff = out.values.iter().zip(&s.values).fold(0.0f64, |a, (x, y)| a.max((x - y).abs()));
        assert!(diff < 1e-12, "{diff}");
        let audit = generic_energy_entropy_audit(&series, 1e-10);
        assert!(audit.pass, "{audit:?}");
    }

    #[test]
    fn moment_correction_restores_targets() {
        let model = ModelSpec::classical(Statistics::MAXWELL, 2).unwrap();
        let grid = MomentumGrid::new(2, 4.0, 10).unwrap();
        let values: Vec<f64> = grid.points.iter().map(|p| (-0.5 * p.norm_squared()).exp()).collect();
        let target = grid.moments(&model, &values);
        let mut noisy: Vec<f64> = values.iter().enumerate().map(|(i, v)| v * (1.0 + 1e-3 * (i as f64).sin())).collect();
        correct_moments(&grid, &model, &mut noisy, &target);
        let m = grid.moments(&model, &noisy);
        assert!((m.mass - target.mass).abs() < 1e-13 && (m.energy - target.energy).abs() < 1e-13);
        assert!((m.momentum - target.momentum).norm() < 1e-13);
    }

    #[test]
    fn cfl_violation_suggests_a_step() {
        let e = check_cfl(&[2.0], &[1.0], 1.0, 0.5).unwrap_err();
        assert_eq!(e, Error::Cfl { suggested: 0.225 });
    }
}
