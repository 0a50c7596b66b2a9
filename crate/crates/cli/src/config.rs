//! Scenario configuration: TOML parsing, defaults and validation.

use std::path::{Path, PathBuf};

use kinetica_core::{Dynamics, ModelSpec, PhysicalConstants, Statistics};
use kinetica_kernels::{angular_normalize, AngularFamily, AngularProfile, KernelSpec, SigmaFamily};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Scenario names accepted on the command line and in configs.
pub const SCENARIOS: [&str; 12] = [
    "lorentz-selftest",
    "compatibility",
    "equilibrium-check",
    "conservation",
    "grazing",
    "newtonian",
    "semiclassical",
    "kinetic-limit",
    "linear-limit",
    "relax",
    "slab",
    "generic-audit",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelBlock {
    /// `classical` or `relativistic`.
    pub dynamics: String,
    /// `maxwell`, `bose`, `fermi`, `wave`, `linear`, or `quantum` with `alpha`.
    pub statistics: String,
    pub alpha: Option<i64>,
    pub d: usize,
    pub m: f64,
    pub c: f64,
    pub hbar: f64,
}

impl Default for ModelBlock {
    fn default() -> Self {
        Self {
            dynamics: "classical".into(),
            statistics: "maxwell".into(),
            alpha: None,
            d: 2,
            m: 1.0,
            c: 1.0,
            hbar: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KernelBlock {
    /// `default`, `constant` or `power-law`.
    pub sigma: String,
    pub sigma0: f64,
    pub gamma: f64,
    /// `power-law`, `constant` or `bump`.
    pub angular: String,
    pub nu: f64,
    pub theta0: f64,
    /// Grazing parameter of the angular profile; `None` leaves it unscaled.
    pub epsilon: Option<f64>,
}

impl Default for KernelBlock {
    fn default() -> Self {
        Self {
            sigma: "default".into(),
            sigma0: 1.0,
            gamma: 0.0,
            angular: "power-law".into(),
            nu: 1.0,
            theta0: 1e-3,
            epsilon: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadratureBlock {
    /// Box half-width of the integration rules.
    pub halfwidth: f64,
    /// Gauss-Legendre nodes per axis of the Boltzmann rules.
    pub nodes: usize,
    /// Gauss-Legendre nodes per axis of the Landau rules.
    pub landau_nodes: usize,
    /// Landau nodes per axis of the strong-versus-weak cross-check.
    pub strong_nodes: usize,
    /// Half-width and nodes per axis of three-dimensional outer rules.
    pub halfwidth_3d: f64,
    pub nodes_3d: usize,
    /// Random samples: pairs for audits, tuples for compatibility, `p*`
    /// samples per node for Monte Carlo rules.
    pub samples: usize,
    pub seed: u64,
}

impl Default for QuadratureBlock {
    fn default() -> Self {
        Self {
            halfwidth: 6.0,
            nodes: 24,
            landau_nodes: 24,
            strong_nodes: 56,
            halfwidth_3d: 5.0,
            nodes_3d: 6,
            samples: 10_000,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunBlock {
    pub t_end: f64,
    pub dt: f64,
    /// Named fixtures; empty means every standard fixture.
    pub fixtures: Vec<String>,
    /// `boltzmann` or `landau` for grid runs.
    pub operator: String,
    /// Cells per axis and half-width of the momentum grid.
    pub grid_nodes: usize,
    pub grid_halfwidth: f64,
    /// Space nodes and period of the slab.
    pub nx: usize,
    pub length: f64,
    /// Parameter list of a sweep (epsilon, c, hbar); empty uses the scenario default.
    pub sweep: Vec<f64>,
    /// Run every dynamics and statistics instead of the model block alone.
    pub all_variants: bool,
    /// Momentum dimensions covered by audits and sweeps; empty uses `model.d`.
    pub dims: Vec<usize>,
    /// Horizon of the RK4 step-doubling check; zero skips it.
    pub doubling_horizon: f64,
    /// Restore the initial moments after each step.
    pub correct_moments: bool,
    /// Collisions in slab runs; off gives free transport.
    pub collisions: bool,
    /// Momentum half-width and cells per axis of the Poisson checks.
    pub poisson_halfwidth: f64,
    pub poisson_nodes: usize,
}

impl Default for RunBlock {
    fn default() -> Self {
        Self {
            t_end: 5.0,
            dt: 0.025,
            fixtures: Vec::new(),
            operator: "boltzmann".into(),
            grid_nodes: 24,
            grid_halfwidth: 5.0,
            nx: 64,
            length: 2.0 * std::f64::consts::PI,
            sweep: Vec::new(),
            all_variants: false,
            dims: Vec::new(),
            doubling_horizon: 0.0,
            correct_moments: false,
            collisions: true,
            poisson_halfwidth: 10.0,
            poisson_nodes: 40,
        }
    }
}

/// A parsed scenario configuration with defaults filled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Option<String>,
    #[serde(default)]
    pub model: ModelBlock,
    #[serde(default)]
    pub kernel: KernelBlock,
    #[serde(default)]
    pub quadrature: QuadratureBlock,
    #[serde(default)]
    pub run: RunBlock,
    /// Output directory; the command line `--out` takes precedence.
    pub output: Option<PathBuf>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

impl ScenarioConfig {
    /// Parses TOML text and validates it.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: ScenarioConfig = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((0, 0), |s| line_col(text, s.start));
            CliError::Parse {
                line,
                column,
                message: e.message().to_string(),
            }
        })?;
        config.validate()?;
        Ok(config)
    }

    /// Reads and parses a config file.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// Checks every field that can be checked without running anything.
    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(s) = &self.scenario {
            if !SCENARIOS.contains(&s.as_str()) {
                return Err(invalid("scenario", format!("unknown scenario {s:?}")));
            }
        }
        self.model_spec()?;
        self.kernel_spec()?;
        let q = &self.quadrature;
        if !(q.halfwidth > 0.0 && q.halfwidth.is_finite() && q.halfwidth_3d > 0.0 && q.halfwidth_3d.is_finite()) {
            return Err(invalid("quadrature.halfwidth", "must be positive"));
        }
        if q.nodes < 2 || q.landau_nodes < 2 || q.strong_nodes < 2 || q.nodes_3d < 2 {
            return Err(invalid("quadrature.nodes", "need at least 2 nodes per axis"));
        }
        if q.samples == 0 {
            return Err(invalid("quadrature.samples", "must be positive"));
        }
        let r = &self.run;
        if !(r.t_end > 0.0) || !(r.dt > 0.0) {
            return Err(invalid("run.dt", "t_end and dt must be positive"));
        }
        if !["boltzmann", "landau"].contains(&r.operator.as_str()) {
            return Err(invalid("run.operator", format!("expected boltzmann or landau, got {:?}", r.operator)));
        }
        if r.dims.iter().any(|d| *d != 2 && *d != 3) {
            return Err(invalid("run.dims", "dimensions must be 2 or 3"));
        }
        if r.sweep.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(invalid("run.sweep", "values must be positive and finite"));
        }
        let names = kinetica_core::standard_fixtures(&self.model_spec()?).map_err(CliError::Module)?;
        for f in &r.fixtures {
            if !names.iter().any(|(n, _)| n == f) {
                return Err(invalid("run.fixtures", format!("unknown fixture {f:?}")));
            }
        }
        Ok(())
    }

    pub fn statistics(&self) -> Result<Statistics, CliError> {
        let m = &self.model;
        match (m.statistics.as_str(), m.alpha) {
            ("maxwell", None | Some(0)) => Ok(Statistics::MAXWELL),
            ("bose", None | Some(1)) => Ok(Statistics::BOSE),
            ("fermi", None | Some(-1)) => Ok(Statistics::FERMI),
            ("wave", None) => Ok(Statistics::Wave),
            ("linear", None) => Ok(Statistics::Linear),
            ("quantum", Some(a)) => Statistics::quantum(a).map_err(|e| invalid("statistics", e.to_string())),
            (s, a) => Err(invalid("statistics", format!("unsupported statistics {s:?} with alpha {a:?}"))),
        }
    }

    pub fn dynamics(&self) -> Result<Dynamics, CliError> {
        match self.model.dynamics.as_str() {
            "classical" => Ok(Dynamics::Classical),
            "relativistic" => Ok(Dynamics::Relativistic),
            s => Err(invalid("dynamics", format!("expected classical or relativistic, got {s:?}"))),
        }
    }

    pub fn constants(&self) -> Result<PhysicalConstants, CliError> {
        let m = &self.model;
        PhysicalConstants::new(m.m, m.c, m.hbar).map_err(|e| invalid("model", e.to_string()))
    }

    pub fn model_spec(&self) -> Result<ModelSpec, CliError> {
        ModelSpec::new(self.dynamics()?, self.statistics()?, self.model.d, self.constants()?)
            .map_err(|e| invalid("model", e.to_string()))
    }

    /// Kernel for an arbitrary model, built from the kernel block.
    pub fn kernel_for(&self, model: ModelSpec) -> Result<KernelSpec, CliError> {
        let k = &self.kernel;
        let base = match k.sigma.as_str() {
            "default" => return self.default_sigma_kernel(model),
            "constant" => SigmaFamily::Constant { sigma0: k.sigma0 },
            "power-law" => SigmaFamily::PowerLaw {
                sigma0: k.sigma0,
                gamma: k.gamma,
            },
            s => return Err(invalid("kernel.sigma", format!("unknown cross-section family {s:?}"))),
        };
        let sigma = match model.dynamics {
            Dynamics::Classical => base,
            Dynamics::Relativistic => base.newtonian_partner(model.constants.m),
        };
        KernelSpec::new(sigma, self.angular_profile(model.d)?, model).map_err(|e| invalid("kernel", e.to_string()))
    }

    fn default_sigma_kernel(&self, model: ModelSpec) -> Result<KernelSpec, CliError> {
        let k = KernelSpec::default_for(model).map_err(|e| invalid("kernel", e.to_string()))?;
        Ok(k.with_angular(self.angular_profile(model.d)?))
    }

    fn angular_profile(&self, d: usize) -> Result<AngularProfile, CliError> {
        let k = &self.kernel;
        let family = match k.angular.as_str() {
            "power-law" => AngularFamily::PowerLaw {
                nu: k.nu,
                theta0: k.theta0,
            },
            "constant" => AngularFamily::Constant,
            "bump" => AngularFamily::Bump,
            s => return Err(invalid("kernel.angular", format!("unknown angular family {s:?}"))),
        };
        let profile = AngularProfile::new(family, d).and_then(|p| angular_normalize(&p));
        let profile = profile.map_err(|e| invalid("kernel.angular", e.to_string()))?;
        match k.epsilon {
            None => Ok(profile),
            Some(eps) => kinetica_kernels::rescale_angular(&profile, eps).map_err(|e| invalid("kernel.epsilon", e.to_string())),
        }
    }

    pub fn kernel_spec(&self) -> Result<KernelSpec, CliError> {
        self.kernel_for(self.model_spec()?)
    }

    /// Momentum dimensions to cover.
    pub fn dims(&self) -> Vec<usize> {
        if self.run.dims.is_empty() {
            vec![self.model.d]
        } else {
            self.run.dims.clone()
        }
    }

    /// `(dynamics, statistics)` pairs to cover.
    pub fn variants(&self) -> Result<Vec<(Dynamics, Statistics)>, CliError> {
        if !self.run.all_variants {
            return Ok(vec![(self.dynamics()?, self.statistics()?)]);
        }
        let mut out = Vec::new();
        for dy in [Dynamics::Classical, Dynamics::Relativistic] {
            for s in [
                Statistics::MAXWELL,
                Statistics::BOSE,
                Statistics::FERMI,
                Statistics::Wave,
                Statistics::Linear,
            ] {
                out.push((dy, s));
            }
        }
        Ok(out)
    }

    /// Model block with the given dynamics, statistics and dimension.
    pub fn model_with(&self, dynamics: Dynamics, statistics: Statistics, d: usize) -> Result<ModelSpec, CliError> {
        ModelSpec::new(dynamics, statistics, d, self.constants()?).map_err(|e| invalid("model", e.to_string()))
    }

    /// Sweep values, or `default` when none are configured.
    pub fn sweep_or(&self, default: &[f64]) -> Vec<f64> {
        if self.run.sweep.is_empty() {
            default.to_vec()
        } else {
            self.run.sweep.clone()
        }
    }

    /// Stable SHA-256 of the resolved configuration.
    pub fn hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let json = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(json.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn invalid(field: &'static str, reason: impl Into<String>) -> CliError {
    CliError::Validation {
        field,
        reason: reason.into(),
    }
}
