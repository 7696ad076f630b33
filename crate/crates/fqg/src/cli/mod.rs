//! File ingestion, analysis commands, report emission, and Peter-Weyl
//! caching: the batch interface behind the `fqg` binary.
//!
//! Reports are single JSON documents on standard output. Exit codes:
//! 0 pass, 1 theorem-verification failure, 2 input/axiom failure, 3 I/O.

pub mod cache;
pub mod commands;
pub mod schema;

pub use commands::{
    build_coaction, build_quantum_group, cmd_analyze_action, cmd_analyze_group, cmd_reduce,
    cmd_verify, ReduceMode, RunOptions,
};
pub use schema::{parse_spec, parse_spec_value, SpecDocument};

use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema error at `{pointer}`: {message}")]
    Schema { pointer: String, message: String },
    #[error("{0}")]
    Input(String),
}

impl CliError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 3,
            CliError::Json(_) => 2,
            CliError::Schema { .. } => 2,
            CliError::Input(_) => 2,
        }
    }

    /// Structured error document for stdout.
    pub fn to_json(&self) -> Value {
        match self {
            CliError::Schema { pointer, message } => json!({
                "error": {"type": "schema", "pointer": pointer, "message": message}
            }),
            CliError::Io(e) => json!({"error": {"type": "io", "message": e.to_string()}}),
            CliError::Json(e) => json!({"error": {"type": "json", "message": e.to_string()}}),
            CliError::Input(m) => json!({"error": {"type": "input", "message": m}}),
        }
    }
}

/// Renders a report for stdout.
pub fn render(report: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(report).expect("report serializes")
    } else {
        serde_json::to_string(report).expect("report serializes")
    }
}
