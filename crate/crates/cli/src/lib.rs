//! Case registry and report writers behind the `ibd` binary.
//!
//! Each case pairs a method computation with an independent oracle and a
//! tolerance; [`run_case`] fills a [`CaseRecord`] and [`verify_all`] runs
//! every case matching a glob.

pub mod config;
pub mod params;
pub mod registry;
pub mod report;

pub use params::Params;
pub use registry::{cases, find_case, run_case, verify_all, Case, CaseRecord, ParamSpec, RunOptions, Status};
pub use report::{render, Format};

/// Failures that stop a run before a record can be produced.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error(transparent)]
    Core(#[from] ibd_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
