//! IO, campaign harness, and report formats for the skew-information
//! checkers in `skewtrace-core`.

pub mod harness;
pub mod io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Core(#[from] skewtrace_core::CoreError),
    #[error("io error: {0}")]
    Io(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}
