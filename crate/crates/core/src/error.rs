use std::path::PathBuf;

use thiserror::Error;

/// Which population a statistic was requested over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleScope {
    Global,
    Band,
}

impl std::fmt::Display for SampleScope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SampleScope::Global => f.write_str("global"),
            SampleScope::Band => f.write_str("band"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("signal must contain at least one sample")]
    Empty,

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: row {row}: cannot parse {value:?} as a finite number")]
    Parse {
        path: PathBuf,
        row: usize,
        value: String,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("{path}: no data rows")]
    NoData { path: PathBuf },

    #[error("insufficient {scope} samples: need at least {needed}, got {got}")]
    InsufficientSamples {
        scope: SampleScope,
        needed: usize,
        got: usize,
    },

    #[error("{what} has zero variance")]
    ZeroVariance { what: &'static str },

    #[error("loss evaluation not finite at coordinate {index}")]
    EvaluationNotFinite { index: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}

pub(crate) fn ensure_same_len(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::LengthMismatch { left, right })
    }
}
