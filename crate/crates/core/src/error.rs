use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Fourier modes on the fiber circle must be half-integers.
    #[error("invalid mode k = {0}: spin structure requires k in Z + 1/2")]
    InvalidMode(f64),

    #[error("t = {t} lies within one grid cell (h = {cell}) of a pole")]
    PoleProximity { t: f64, cell: f64 },

    #[error("numerical failure in {context}: {detail}")]
    NumericalFailure { context: String, detail: String },

    /// A hypothesis of the theorem being exercised does not hold.
    #[error("hypothesis violated: {hypothesis} ({witness})")]
    PreconditionViolation { hypothesis: String, witness: String },

    #[error("parse error at {pointer}: {message}")]
    Parse { pointer: String, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn numerical(context: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::NumericalFailure {
            context: context.into(),
            detail: detail.into(),
        }
    }

    pub(crate) fn precondition(hypothesis: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::PreconditionViolation {
            hypothesis: hypothesis.into(),
            witness: witness.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
