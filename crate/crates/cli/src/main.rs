use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use kinetica_cli::{run_from_path, CliError, RunOptions};

/// Runs one kinetica scenario and writes CSV tables plus a JSON summary.
#[derive(Debug, Parser)]
#[command(name = "kinetica", version)]
struct Args {
    /// Scenario name, e.g. lorentz-selftest or relax.
    scenario: String,
    /// TOML config file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides the config.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed; overrides `quadrature.seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; falls back to KINETICA_THREADS, then all cores.
    #[arg(long)]
    threads: Option<usize>,
}

fn report(e: &CliError) {
    let json = serde_json::to_string(e).unwrap_or_else(|_| format!("{{\"message\":{:?}}}", e.to_string()));
    eprintln!("error: {e}");
    println!("{json}");
}

fn thread_count(flag: Option<usize>) -> Result<usize, CliError> {
    let n = match flag {
        Some(n) => n,
        None => match std::env::var("KINETICA_THREADS") {
            Ok(v) => v.trim().parse().map_err(|_| CliError::Validation {
                field: "KINETICA_THREADS",
                reason: format!("not a thread count: {v:?}"),
            })?,
            Err(_) => 0,
        },
    };
    Ok(n)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let threads = match thread_count(args.threads) {
        Ok(n) => n,
        Err(e) => {
            report(&e);
            return ExitCode::from(2);
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
        report(&CliError::output(format!("thread pool: {e}")));
        return ExitCode::from(2);
    }
    let options = RunOptions {
        out: args.out,
        seed: args.seed,
        threads: rayon::current_num_threads(),
    };
    match run_from_path(&args.scenario, &args.config, &options) {
        Ok((summary, None)) => {
            for c in summary.checks.iter().filter(|c| !c.pass) {
                eprintln!("FAIL {}: {:e} ({} {:e})", c.name, c.value, c.relation, c.tolerance);
            }
            println!(
                "{} {}: {} checks, {}",
                summary.scenario,
                if summary.pass { "PASS" } else { "FAIL" },
                summary.checks.len(),
                summary.files.join(" ")
            );
            if summary.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok((_, Some(e))) | Err(e) => {
            report(&e);
            ExitCode::from(2)
        }
    }
}
