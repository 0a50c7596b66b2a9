//! One-dimensional periodic slab `[0, X) x` momentum grid with Strang
//! splitting between free transport and collisions.
//!
//! Transport along `v_x(p) = d e / d p_x` is an exact spectral shift of each
//! momentum column, so it conserves every column mass and is exact on
//! band-limited data.

use std::f64::consts::PI;

use kinetica_core::{Error, ModelSpec, Result, Vec3};
use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::grid::MomentumGrid;
use crate::homogeneous::{check_cfl, clip_negative, MonitorPolicy, MonitorRecord, MonitorSeries, State};
use crate::operator::CollisionOperator;

/// Periodic space grid times a momentum grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SlabGrid {
    pub nx: usize,
    /// Period `X`.
    pub length: f64,
    pub momentum: MomentumGrid,
}

impl SlabGrid {
    pub fn new(nx: usize, length: f64, momentum: MomentumGrid) -> Result<Self> {
        if nx < 4 || !nx.is_multiple_of(2) {
            return Err(Error::Invalid {
                field: "nx",
                reason: format!("need an even number of at least 4 space nodes, got {nx}"),
            });
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::Invalid {
                field: "length",
                reason: format!("period must be positive and finite, got {length}"),
            });
        }
        Ok(Self { nx, length, momentum })
    }

    pub fn dx(&self) -> f64 {
        self.length / self.nx as f64
    }

    pub fn x(&self, ix: usize) -> f64 {
        ix as f64 * self.dx()
    }

    /// Number of momentum nodes per space node.
    pub fn np(&self) -> usize {
        self.momentum.len()
    }

    pub fn len(&self) -> usize {
        self.nx * self.np()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat index of `(ix, k)`, space slowest.
    pub fn index(&self, ix: usize, k: usize) -> usize {
        ix * self.np() + k
    }

    /// Space-momentum cell volume.
    pub fn weight(&self) -> f64 {
        self.dx() * self.momentum.weight()
    }

    /// Samples `f(x, p)` at every node.
    pub fn sample(&self, f: impl Fn(f64, &Vec3) -> f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len());
        for ix in 0..self.nx {
            let x = self.x(ix);
            out.extend(self.momentum.points.iter().map(|p| f(x, p)));
        }
        out
    }

    /// Total mass, momentum and energy.
    pub fn totals(&self, model: &ModelSpec, values: &[f64]) -> (f64, Vec3, f64) {
        let (mut mass, mut momentum, mut energy) = (0.0, Vec3::zeros(), 0.0);
        for column in values.chunks(self.np()) {
            let m = self.momentum.moments(model, column);
            mass += m.mass;
            momentum += m.momentum;
            energy += m.energy;
        }
        let dx = self.dx();
        (mass * dx, momentum * dx, energy * dx)
    }

    /// Total entropy `sum dx w h(f)`.
    pub fn entropy(&self, model: &ModelSpec, values: &[f64]) -> Result<f64> {
        let mut acc = 0.0;
        for column in values.chunks(self.np()) {
            acc += self.momentum.entropy(model, column)?;
        }
        Ok(acc * self.dx())
    }
}

/// Spectral free-transport stepper for a fixed slab and model.
pub struct Transport {
    grid: SlabGrid,
    /// `v_x` of each momentum node.
    vx: Vec<f64>,
    planner_len: usize,
    forward: std::sync::Arc<dyn rustfft::Fft<f64>>,
    inverse: std::sync::Arc<dyn rustfft::Fft<f64>>,
}

impl std::fmt::Debug for Transport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Transport")
            .field("grid", &self.grid)
            .field("len", &self.planner_len)
            .finish()
    }
}

impl Transport {
    pub fn new(grid: SlabGrid, model: &ModelSpec) -> Result<Self> {
        if model.d != grid.momentum.d {
            return Err(Error::Invalid {
                field: "d",
                reason: "model and momentum grid dimensions differ".into(),
            });
        }
        let vx = grid.momentum.points.iter().map(|p| model.velocity(p).x).collect();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(grid.nx);
        let inverse = planner.plan_fft_inverse(grid.nx);
        Ok(Self {
            planner_len: grid.nx,
            grid,
            vx,
            forward,
            inverse,
        })
    }

    pub fn grid(&self) -> &SlabGrid {
        &self.grid
    }

    pub fn max_speed(&self) -> f64 {
        self.vx.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// Replaces `f(x, p)` by `f(x - v_x(p) t, p)`.
    pub fn shift(&self, values: &mut [f64], t: f64) {
        let (nx, np) = (self.grid.nx, self.grid.np());
        let length = self.grid.length;
        let columns: Vec<(usize, Vec<f64>)> = (0..np)
            .into_par_iter()
            .map(|k| {
                let mut buf: Vec<Complex<f64>> = (0..nx).map(|ix| Complex::new(values[ix * np + k], 0.0)).collect();
                self.forward.process(&mut buf);
                let s = self.vx[k] * t;
                for (m, c) in buf.iter_mut().enumerate() {
                    let wave = if m <= nx / 2 { m as f64 } else { m as f64 - nx as f64 };
                    let phase = -2.0 * PI * wave * s / length;
                    if 2 * m == nx {
                        // the Nyquist mode of real data stays real
                        *c *= phase.cos();
                    } else {
                        *c *= Complex::from_polar(1.0, phase);
                    }
                }
                self.inverse.process(&mut buf);
                let scale = 1.0 / nx as f64;
                (k, buf.iter().map(|c| c.re * scale).collect())
            })
            .collect();
        for (k, col) in columns {
            for (ix, v) in col.into_iter().enumerate() {
                values[ix * np + k] = v;
            }
        }
    }

    /// Checks `dt max|v_x| / dx <= 1`.
    pub fn check_cfl(&self, dt: f64) -> Result<()> {
        let vmax = self.max_speed();
        if vmax > 0.0 && dt * vmax / self.grid.dx() > 1.0 {
            return Err(Error::Cfl {
                suggested: 0.9 * self.grid.dx() / vmax,
            });
        }
        Ok(())
    }
}

/// Slab state: time and values laid out by [`SlabGrid::index`].
pub type SlabState = State;

/// One RK4 collision step of every space column, clipped at zero.
fn collide(op: &CollisionOperator, values: &[f64], dt: f64, policy: &MonitorPolicy) -> Result<(Vec<f64>, f64)> {
    let np = op.grid().len();
    let parts: Vec<Result<(Vec<f64>, f64)>> = values
        .par_chunks(np)
        .map(|column| {
            let q0 = op.evaluate(column)?.q;
            check_cfl(&q0, column, dt, policy.cfl)?;
            let state = State {
                time: 0.0,
                values: column.to_vec(),
            };
            let k = |f: &[f64]| op.evaluate(f).map(|e| e.q);
            let stage = |f: &[f64], q: &[f64], a: f64| -> Vec<f64> { f.iter().zip(q).map(|(x, y)| x + a * y).collect() };
            let k2 = k(&stage(&state.values, &q0, 0.5 * dt))?;
            let k3 = k(&stage(&state.values, &k2, 0.5 * dt))?;
            let k4 = k(&stage(&state.values, &k3, dt))?;
            let mut out: Vec<f64> = (0..np)
                .map(|i| column[i] + dt / 6.0 * (q0[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
                .collect();
            let clipped = clip_negative(&mut out, op.grid().weight());
            Ok((out, clipped))
        })
        .collect();
    let mut out = Vec::with_capacity(values.len());
    let mut clipped = 0.0;
    for p in parts {
        let (v, c) = p?;
        out.extend(v);
        clipped += c;
    }
    Ok((out, clipped))
}

/// Strang step: half shift, collision step (if any), half shift. Returns the
/// new state and the clipped mass.
pub fn slab_step(
    transport: &Transport,
    collision: Option<&CollisionOperator>,
    state: &SlabState,
    dt: f64,
    policy: &MonitorPolicy,
) -> Result<(SlabState, f64)> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Invalid {
            field: "dt",
            reason: format!("time step must be positive, got {dt}"),
        });
    }
    if state.values.len() != transport.grid.len() {
        return Err(Error::Invalid {
            field: "values",
            reason: format!("expected {} slab values, got {}", transport.grid.len(), state.values.len()),
        });
    }
    transport.check_cfl(dt)?;
    let mut values = state.values.clone();
    transport.shift(&mut values, 0.5 * dt);
    let mut clipped = 0.0;
    if let Some(op) = collision {
        let (v, c) = collide(op, &values, dt, policy)?;
        values = v;
        clipped = c;
    }
    transport.shift(&mut values, 0.5 * dt);
    clipped += clip_negative(&mut values, transport.grid.weight());
    Ok((
        SlabState {
            time: state.time + dt,
            values,
        },
        clipped,
    ))
}

fn slab_record(
    transport: &Transport,
    collision: Option<&CollisionOperator>,
    model: &ModelSpec,
    step: usize,
    state: &SlabState,
    clipped: f64,
) -> Result<MonitorRecord> {
    let g = &transport.grid;
    let (mass, momentum, energy) = g.totals(model, &state.values);
    let mut dissipation = 0.0;
    if let Some(op) = collision {
        for column in state.values.chunks(g.np()) {
            dissipation += op.evaluate(column)?.dissipation;
        }
        dissipation *= g.dx();
    }
    Ok(MonitorRecord {
        step,
        time: state.time,
        mass,
        momentum,
        energy,
        entropy: g.entropy(model, &state.values)?,
        dissipation,
        clipped,
    })
}

/// Integrates the slab to `t_end`, recording monitors every step.
///
/// Mass and momentum drift and per-step entropy increase are checked against
/// `policy`; energy drift is only recorded, since the shift is exact per
/// column and energy is conserved whenever mass is.
pub fn slab_run(
    transport: &Transport,
    collision: Option<&CollisionOperator>,
    model: &ModelSpec,
    initial: &SlabState,
    t_end: f64,
    dt: f64,
    policy: &MonitorPolicy,
) -> Result<(SlabState, MonitorSeries)> {
    if !(t_end > initial.time) || !(dt > 0.0) {
        return Err(Error::Invalid {
            field: "t_end",
            reason: format!("need t_end > {} and dt > 0, got {t_end} and {dt}", initial.time),
        });
    }
    let span = t_end - initial.time;
    let steps = (span / dt - 1e-9).ceil().max(1.0) as usize;
    let h = span / steps as f64;
    let mut state = initial.clone();
    let first = slab_record(transport, collision, model, 0, &state, 0.0)?;
    let pscale: f64 = state
        .values
        .chunks(transport.grid.np())
        .map(|c| transport.grid.momentum.momentum_scale(c))
        .sum::<f64>()
        * transport.grid.dx();
    let mut series = MonitorSeries {
        records: vec![first],
    };
    for n in 1..=steps {
        let (next, clipped) = slab_step(transport, collision, &state, h, policy).map_err(|e| match e {
            Error::Cfl { suggested } => Error::Monitor {
                step: n,
                detail: format!("time step exceeds stability bound, suggested dt = {suggested}"),
            },
            e => e,
        })?;
        state = next;
        state.time = initial.time + n as f64 * h;
        let r = slab_record(transport, collision, model, n, &state, clipped)?;
        let prev = series.last().expect("seeded");
        let dm = (r.mass - first.mass).abs() / first.mass.abs().max(f64::MIN_POSITIVE);
        let dp = (r.momentum - first.momentum).norm() / pscale.max(f64::MIN_POSITIVE);
        let tol = policy.moment_tolerance;
        if dm > tol || dp > tol {
            return Err(Error::Monitor {
                step: n,
                detail: format!("moment drift at t = {}: mass {dm:.3e}, momentum {dp:.3e}", r.time),
            });
        }
        if r.entropy - prev.entropy > policy.entropy_tolerance * prev.entropy.abs() {
            return Err(Error::Monitor {
                step: n,
                detail: format!("entropy increased by {:.3e} at t = {}", r.entropy - prev.entropy, r.time),
            });
        }
        if r.clipped > policy.clip_tolerance * first.mass.abs() {
            return Err(Error::Monitor {
                step: n,
                detail: format!("clipped mass {:.3e} at t = {}", r.clipped, r.time),
            });
        }
        series.records.push(r);
    }
    Ok((state, series))
}

#[cfg(test)]
mod tests {
    use super::*;
    use kinetica_core::Statistics;

    fn setup() -> (Transport, ModelSpec) {
        let model = ModelSpec::classical(Statistics::MAXWELL, 2).unwrap();
        let grid = SlabGrid::new(64, 2.0 * PI, MomentumGrid::new(2, 4.0, 8).unwrap()).unwrap();
        (Transport::new(grid, &model).unwrap(), model)
    }

    #[test]
    fn shift_matches_exact_advection() {
        let (tr, _) = setup();
        let f0 = |x: f64, p: &Vec3| (1.0 + 0.4 * (x).cos() + 0.1 * (3.0 * x).sin()) * (-0.5 * p.norm_squared()).exp();
        let mut v = tr.grid().sample(f0);
        let t = 0.37;
        tr.shift(&mut v, t);
        let exact = tr.grid().sample(|x, p| f0(x - p.x * t, p));
        let err = v.iter().zip(&exact).fold(0.0f64, |a, (x, y)| a.max((x - y).abs()));
        assert!(err < 1e-13, "{err}");
    }

    #[test]
    fn slab_cfl_is_enforced() {
        let (tr, _) = setup();
        assert!(matches!(tr.check_cfl(10.0), Err(Error::Cfl { .. })));
        assert!(tr.check_cfl(0.01).is_ok());
    }
}
