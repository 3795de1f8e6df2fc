//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: mode count must be at least 1 (got {0})")]
    InvalidDimension(usize),

    #[error("invalid mode indices (j={j}, k={k}) for {dim} modes")]
    InvalidMode { j: usize, k: usize, dim: usize },

    #[error("matrix is not unitary: max |U\u{2020}U - 1| entry deviation {deviation:.3e} exceeds {tol:.3e}")]
    NotUnitary { deviation: f64, tol: f64 },

    #[error("matrix is not Hermitian: max deviation {deviation:.3e} exceeds {tol:.3e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch in {context}: expected {expected}, got {found}")]
    ShapeMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("occupation list is empty")]
    EmptyOccupation,

    #[error("target state is unreachable: post-selection probability is zero")]
    ZeroProbability,

    #[error("operation requires exactly {expected} modes, got {found}")]
    WrongArity { expected: usize, found: usize },

    #[error("correlation order {order} exceeds the supported cap {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("mode occupancy {occupancy} exceeds the 4-photon pseudo-PNR cap")]
    Unresolvable { occupancy: u32 },

    #[error("efficiency for detector {detector} is undetermined by the calibration reference")]
    UndeterminedEfficiency { detector: String },

    #[error("no compatible click events: reconstruction is empty")]
    EmptyReconstruction,

    #[error("invalid Gram matrix: {0}")]
    InvalidGram(String),

    #[error("invalid efficiency vector: {0}")]
    InvalidEfficiency(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("probabilities must sum to 1 (got {total})")]
    NotNormalized { total: f64 },

    #[error("state is not normalized: |\u{03c8}|\u{00b2} = {norm}")]
    UnnormalizedState { norm: f64 },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to parse {context}: {message}")]
    Parse { context: String, message: String },
}

impl Error {
    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    pub(crate) fn parse(context: impl Into<String>, message: impl ToString) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.to_string(),
        }
    }
}
