//! Errors of the command-line runner.

use std::path::PathBuf;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CliError {
    #[error("cannot read {path:?}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("config parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid config field {field}: {reason}")]
    Validation { field: &'static str, reason: String },
    #[error("scenario {cli:?} does not match the config scenario {config:?}")]
    ScenarioMismatch { cli: String, config: String },
    #[error("{0}")]
    #[serde(serialize_with = "display")]
    Module(kinetica_core::Error),
    #[error("cannot write output: {message}")]
    Output { message: String },
}

fn display<S: serde::Serializer>(e: &kinetica_core::Error, s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Detail {
        message: String,
    }
    Detail { message: e.to_string() }.serialize(s)
}

impl CliError {
    pub fn output(message: impl Into<String>) -> Self {
        CliError::Output { message: message.into() }
    }
}

impl From<kinetica_core::Error> for CliError {
    fn from(e: kinetica_core::Error) -> Self {
        CliError::Module(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_variant_serializes_with_a_kind_tag() {
        let errors = [
            CliError::Io { path: "a.toml".into(), message: "gone".into() },
            CliError::Parse { line: 1, column: 2, message: "bad".into() },
            CliError::Validation { field: "run.dt", reason: "negative".into() },
            CliError::ScenarioMismatch { cli: "a".into(), config: "b".into() },
            CliError::Module(kinetica_core::Error::SingularPair),
            CliError::output("disk full"),
        ];
        for e in errors {
            let v = serde_json::to_value(&e).unwrap();
            assert!(v["kind"].is_string(), "{v}");
        }
    }
}
