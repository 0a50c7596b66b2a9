//! Acceptance run: every scenario config in `configs/`, one line per criterion.
//!
//! Result lines are written straight to stderr so they show up without
//! `--nocapture`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;

use kinetica_cli::{execute, prepare, RunOptions, ScenarioConfig, Summary};

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn config_path(scenario: &str) -> PathBuf {
    repo_root().join("configs").join(format!("{scenario}.toml"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance").join(name);
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn line(text: &str) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{text}");
}

/// Runs a scenario in-process and reports failing checks.
fn scenario(name: &str) -> (bool, String) {
    let config = ScenarioConfig::load(&config_path(name)).and_then(|c| prepare(name, c, &RunOptions::default()));
    let config = match config {
        Ok(c) => c,
        Err(e) => return (false, format!("{name}: config error: {e}")),
    };
    let (summary, error): (Summary, _) = execute(name, &config, &scratch(name), 1);
    if let Some(e) = error {
        return (false, format!("{name}: error: {e}"));
    }
    let failed: Vec<String> = summary
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}={:e}", c.name, c.value))
        .collect();
    let detail = if failed.is_empty() {
        format!("{name}: {} checks in {:.1}s", summary.checks.len(), summary.timings.total_seconds)
    } else {
        format!("{name}: failed {}", failed.join(", "))
    };
    (summary.pass, detail)
}

fn criterion(results: &mut Vec<bool>, index: usize, title: &str, scenarios: &[&str]) {
    let mut ok = true;
    let mut details = Vec::new();
    for s in scenarios {
        let (pass, detail) = scenario(s);
        ok &= pass;
        details.push(detail);
    }
    line(&format!(
        "criterion {index} [{}] {title}: {}",
        if ok { "PASS" } else { "FAIL" },
        details.join("; ")
    ));
    results.push(ok);
}

/// Runs the binary and returns the CSV files it wrote, by name.
fn binary_csvs(scenario: &str, threads: usize, dir: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_kinetica"))
        .arg(scenario)
        .arg("--config")
        .arg(config_path(scenario))
        .arg("--out")
        .arg(dir)
        .arg("--threads")
        .arg(threads.to_string())
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!(
            "{scenario} at {threads} threads exited with {:?}",
            status.status.code()
        ));
    }
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .map(|p| {
            let bytes = std::fs::read(&p).unwrap_or_default();
            (p.file_name().unwrap().to_string_lossy().into_owned(), bytes)
        })
        .collect();
    files.sort();
    Ok(files)
}

fn determinism(results: &mut Vec<bool>, scenarios: &[&str]) {
    let mut ok = true;
    let mut details = Vec::new();
    for s in scenarios {
        let runs: Result<Vec<_>, String> = [(1, "a"), (4, "b"), (1, "c")]
            .iter()
            .map(|(t, tag)| binary_csvs(s, *t, &scratch(&format!("det-{s}-{tag}"))))
            .collect();
        match runs {
            Ok(r) => {
                let same = !r[0].is_empty() && r[0] == r[1] && r[0] == r[2];
                ok &= same;
                details.push(format!("{s}: {} files {}", r[0].len(), if same { "identical" } else { "differ" }));
            }
            Err(e) => {
                ok = false;
                details.push(e);
            }
        }
    }
    line(&format!(
        "criterion 9 [{}] determinism at 1 and 4 threads: {}",
        if ok { "PASS" } else { "FAIL" },
        details.join("; ")
    ));
    results.push(ok);
}

#[test]
fn acceptance_criteria() {
    let mut results = Vec::new();
    criterion(&mut results, 1, "Lorentz suite", &["lorentz-selftest"]);
    criterion(&mut results, 2, "compatibility suite", &["compatibility"]);
    criterion(&mut results, 3, "equilibrium annihilation", &["equilibrium-check"]);
    criterion(&mut results, 4, "conservation and H-theorem", &["conservation"]);
    criterion(&mut results, 5, "grazing limit", &["grazing"]);
    criterion(&mut results, 6, "Newtonian limit", &["newtonian"]);
    criterion(
        &mut results,
        7,
        "semiclassical, kinetic and linear limits",
        &["semiclassical", "kinetic-limit", "linear-limit"],
    );
    criterion(&mut results, 8, "solver audit", &["relax", "slab", "generic-audit"]);
    determinism(
        &mut results,
        &["lorentz-selftest", "compatibility", "kinetic-limit", "generic-audit"],
    );
    let passed = results.iter().filter(|r| **r).count();
    line(&format!("acceptance: {passed}/{} criteria pass", results.len()));
    assert!(results.iter().all(|r| *r), "failing criteria, see the lines above");
}
