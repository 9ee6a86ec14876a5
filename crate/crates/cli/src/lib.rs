//! Randomized checks of the derivative identities for multivector
//! functionals of extensors, with text and JSON reports.

pub mod config;
pub mod identities;
pub mod report;
pub mod runner;

pub use config::{parse_metric, HarnessConfig, Suite};
pub use identities::{catalog, Tolerance};
pub use report::{emit_report, render, Format, IdentityResult, Report, Summary, Witness};
pub use runner::run_suite;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("no results to report")]
    EmptyReport,
}
