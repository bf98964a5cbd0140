//! Config-driven batch runner over `cartan-core`.
//!
//! A run reads a JSON [`Config`], validates it, executes the requested tasks
//! and produces a [`Report`]. Exit codes: 0 when every check passed, 1 when a
//! check failed, 2 for input or config errors.

pub mod config;
pub mod pipeline;
pub mod report;

use sha2::{Digest, Sha256};

pub use config::{Config, Task, Tolerances, Validated};
pub use pipeline::run;
pub use report::{Report, ADVISORY};

/// The conventions document whose hash every report carries.
pub const CONVENTIONS: &str = include_str!("../../../docs/conventions.md");

#[derive(Debug, thiserror::Error)]
pub enum WorkbenchError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed config: {0}")]
    Json(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("input error: {0}")]
    Input(String),
}

impl WorkbenchError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub fn conventions_sha256() -> String {
    Sha256::digest(CONVENTIONS.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses, validates and runs a config document.
pub fn run_json(text: &str) -> Result<Report, WorkbenchError> {
    run(&Config::from_json(text)?.validate()?)
}

/// Exit code for a finished run.
pub fn exit_code(report: &Report) -> i32 {
    if report.passed {
        0
    } else {
        1
    }
}
