//! Exit codes and artifacts of the binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(format!("{name}.toml"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn kinetica(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kinetica")).args(args).output().unwrap()
}

fn summary(dir: &Path, scenario: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(dir.join(format!("{scenario}.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn lorentz_selftest_exits_zero_with_small_defects() {
    let dir = scratch("lorentz");
    let out = kinetica(&["lorentz-selftest", "--config", config("lorentz-selftest").to_str().unwrap(), "--out", dir.to_str().unwrap(), "--threads", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let s = summary(&dir, "lorentz-selftest");
    assert_eq!(s["pass"], true);
    assert_eq!(s["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(s["config_hash"].as_str().unwrap().len(), 64);
    for c in s["checks"].as_array().unwrap() {
        assert!(c["value"].as_f64().unwrap() < 1e-10, "{c}");
    }
}

#[test]
fn compatibility_summary_lists_kappa_per_row() {
    let dir = scratch("compatibility");
    let out = kinetica(&["compatibility", "--config", config("compatibility").to_str().unwrap(), "--out", dir.to_str().unwrap(), "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let s = summary(&dir, "compatibility");
    assert_eq!(s["seed"], 3);
    let notes = s["notes"].as_object().unwrap();
    for (key, expected) in [
        ("kappa/maxwell/cosh/n=2", 1.0),
        ("kappa/maxwell/log-mean/n=2", 1.0),
        ("kappa/wave/quadratic/n=2", 0.5),
        ("kappa/linear/quadratic/n=2", 0.5),
    ] {
        let v = notes.get(key).and_then(|v| v.as_f64()).unwrap_or_else(|| panic!("missing {key}: {notes:?}"));
        assert!((v - expected).abs() < 1e-10, "{key} = {v}");
    }
}

#[test]
fn invalid_config_exits_two_with_diagnostic() {
    let dir = scratch("invalid");
    let path = dir.join("bad.toml");
    std::fs::write(&path, "[model]\nstatistics = \"quantum\"\nalpha = 2\n").unwrap();
    let out = kinetica(&["relax", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let diag: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(diag["kind"], "validation");
    assert_eq!(diag["field"], "statistics");
}

#[test]
fn module_error_still_writes_a_summary() {
    let dir = scratch("cfl");
    let path = dir.join("cfl.toml");
    std::fs::write(&path, "[run]\ndt = 0.5\nt_end = 1.0\ngrid_nodes = 12\n").unwrap();
    let out = kinetica(&["relax", "--config", path.to_str().unwrap(), "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let s = summary(&dir, "relax");
    assert_eq!(s["pass"], false);
    assert_eq!(s["error"]["kind"], "module");
}

#[test]
fn scenario_mismatch_is_rejected() {
    let out = kinetica(&["slab", "--config", config("relax").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let diag: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(diag["kind"], "scenario-mismatch");
}
