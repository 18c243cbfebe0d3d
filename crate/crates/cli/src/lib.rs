//! Batch driver for the weak-measurement scenarios: runs a scenario, collects
//! its tables and pass/fail checks, and writes them as CSV or JSON.

pub mod config;
pub mod output;
pub mod report;
pub mod suites;

pub use config::{Format, RunConfig, Scenario};
pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid {field}: {reason}")]
    Config { field: &'static str, reason: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("computation failed: {0}")]
    Compute(#[from] weakval::Error),
}

impl CliError {
    /// 2 for bad input or unwritable output, 3 for a failed computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 2,
            CliError::Compute(_) => 3,
        }
    }
}

/// Validates `cfg` and runs its scenario.
pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    suites::run_scenario(cfg)
}
