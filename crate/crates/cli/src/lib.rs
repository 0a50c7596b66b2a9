//! Configuration-driven scenario runner.
//!
//! A scenario reads a TOML config, runs one family of checks through the
//! library crates and writes CSV tables plus a JSON summary.

pub mod config;
pub mod error;
pub mod output;
pub mod scenarios;

use std::path::{Path, PathBuf};
use std::time::Instant;

pub use config::{ScenarioConfig, SCENARIOS};
pub use error::CliError;
pub use output::{Check, ScenarioOutput, Summary, Table, Timings};

/// Library version embedded in every summary.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Options from the command line that override the config.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub threads: usize,
}

/// Output directory: the flag, then the config, then `out/`.
pub fn output_dir(config: &ScenarioConfig, options: &RunOptions) -> PathBuf {
    options
        .out
        .clone()
        .or_else(|| config.output.clone())
        .unwrap_or_else(|| PathBuf::from("out"))
}

/// Resolves the scenario name against the config and applies the seed override.
pub fn prepare(scenario: &str, mut config: ScenarioConfig, options: &RunOptions) -> Result<ScenarioConfig, CliError> {
    if !SCENARIOS.contains(&scenario) {
        return Err(CliError::Validation {
            field: "scenario",
            reason: format!("unknown scenario {scenario:?}; expected one of {}", SCENARIOS.join(", ")),
        });
    }
    if let Some(s) = &config.scenario {
        if s != scenario {
            return Err(CliError::ScenarioMismatch {
                cli: scenario.to_string(),
                config: s.clone(),
            });
        }
    }
    config.scenario = Some(scenario.to_string());
    if let Some(seed) = options.seed {
        config.quadrature.seed = seed;
    }
    config.validate()?;
    Ok(config)
}

/// Runs a prepared scenario and writes its artifacts into `dir`.
///
/// A failing module call still produces a summary, with `pass = false` and
/// the error recorded; the error is returned alongside it.
pub fn execute(scenario: &str, config: &ScenarioConfig, dir: &Path, threads: usize) -> (Summary, Option<CliError>) {
    let start = Instant::now();
    let result = scenarios::run_scenario(scenario, config);
    let mut summary = Summary {
        scenario: scenario.to_string(),
        version: VERSION,
        config_hash: config.hash(),
        seed: config.quadrature.seed,
        threads,
        pass: false,
        checks: Vec::new(),
        notes: serde_json::Map::new(),
        files: Vec::new(),
        timings: Timings { total_seconds: 0.0 },
        error: None,
    };
    let mut failure = None;
    match result {
        Ok(out) => {
            summary.pass = out.pass();
            for (k, v) in &out.notes {
                summary.notes.insert(k.clone(), serde_json::json!(v));
            }
            summary.checks = out.checks;
            match output::write_tables(dir, scenario, &out.tables) {
                Ok(files) => summary.files = files,
                Err(e) => failure = Some(e),
            }
        }
        Err(e) => failure = Some(e),
    }
    if failure.is_some() {
        summary.pass = false;
        summary.error = failure.clone();
    }
    summary.timings.total_seconds = start.elapsed().as_secs_f64();
    if let Err(e) = output::write_summary(dir, &summary) {
        failure.get_or_insert(e);
    }
    (summary, failure)
}

/// Loads, prepares and executes a scenario from a config file.
pub fn run_from_path(scenario: &str, path: &Path, options: &RunOptions) -> Result<(Summary, Option<CliError>), CliError> {
    let config = prepare(scenario, ScenarioConfig::load(path)?, options)?;
    let dir = output_dir(&config, options);
    Ok(execute(scenario, &config, &dir, options.threads))
}
