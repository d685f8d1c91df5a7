use thiserror::Error;

use crate::params::ModelKind;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("feature undefined: {0}")]
    Domain(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("could not calibrate GIRG constant: {0}")]
    Calibration(String),

    #[error("dimension mismatch: {model} expects {expected} values, got {got}")]
    DimensionMismatch {
        model: ModelKind,
        expected: usize,
        got: usize,
    },

    #[error("running mean requested before averaging started (iteration {iteration} < {start})")]
    NotYetAveraging { iteration: usize, start: usize },

    #[error("degenerate variance: {0}")]
    DegenerateVariance(&'static str),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
