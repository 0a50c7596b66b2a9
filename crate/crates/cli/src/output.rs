//! Scenario results: CSV tables and the JSON summary.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::CliError;

/// One CSV table with a header row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    #[serde(skip)]
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row; panics on a column count mismatch, which is a bug.
    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len(), "row width of table {}", self.name);
        self.rows.push(row);
    }
}

/// Formats a float in shortest round-trip form.
pub fn num(x: f64) -> String {
    format!("{x:e}")
}

pub fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, num)
}

/// One named acceptance check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    /// `le`: `value <= tolerance`; `ge`: `value >= tolerance`.
    pub relation: &'static str,
    pub pass: bool,
}

impl Check {
    pub fn le(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            relation: "le",
            pass: value <= tolerance,
        }
    }

    pub fn ge(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            relation: "ge",
            pass: value >= tolerance,
        }
    }

    /// Boolean check recorded as value 1 (true) against tolerance 1.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self {
            name: name.into(),
            value: if ok { 1.0 } else { 0.0 },
            tolerance: 1.0,
            relation: "ge",
            pass: ok,
        }
    }
}

/// Everything a scenario produces.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScenarioOutput {
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
    /// Free-form numbers worth keeping in the summary.
    pub notes: Vec<(String, f64)>,
}

impl ScenarioOutput {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn note(&mut self, key: impl Into<String>, value: f64) {
        self.notes.push((key.into(), value));
    }
}

/// JSON summary written next to the CSV files.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub scenario: String,
    pub version: &'static str,
    pub config_hash: String,
    pub seed: u64,
    pub threads: usize,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub notes: serde_json::Map<String, serde_json::Value>,
    pub files: Vec<String>,
    pub timings: Timings,
    pub error: Option<CliError>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Timings {
    pub total_seconds: f64,
}

fn csv_name(scenario: &str, index: usize, table: &Table) -> String {
    if index == 0 {
        format!("{scenario}.csv")
    } else {
        format!("{scenario}_{}.csv", table.name)
    }
}

/// Writes every table as RFC 4180 CSV; returns the file names.
pub fn write_tables(dir: &Path, scenario: &str, tables: &[Table]) -> Result<Vec<String>, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::output(format!("{}: {e}", dir.display())))?;
    let mut names = Vec::new();
    for (i, t) in tables.iter().enumerate() {
        let name = csv_name(scenario, i, t);
        let path: PathBuf = dir.join(&name);
        let out = |e: csv::Error| CliError::output(format!("{}: {e}", path.display()));
        let mut w = csv::Writer::from_path(&path).map_err(out)?;
        w.write_record(&t.columns).map_err(out)?;
        for row in &t.rows {
            w.write_record(row).map_err(out)?;
        }
        w.flush().map_err(|e| CliError::output(format!("{}: {e}", path.display())))?;
        names.push(name);
    }
    Ok(names)
}

/// Writes the JSON summary as `<scenario>.json`.
pub fn write_summary(dir: &Path, summary: &Summary) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::output(format!("{}: {e}", dir.display())))?;
    let path = dir.join(format!("{}.json", summary.scenario));
    let text = serde_json::to_string_pretty(summary).map_err(|e| CliError::output(e.to_string()))?;
    std::fs::write(&path, text + "\n").map_err(|e| CliError::output(format!("{}: {e}", path.display())))?;
    Ok(path)
}
