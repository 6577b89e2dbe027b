//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported level N={0}: levels below 5 are not handled")]
    UnsupportedLevel(u32),

    #[error("division by zero in cyclotomic field")]
    CyclotomicDivisionByZero,

    #[error("series variable mismatch: {0} vs {1}")]
    TagMismatch(String, String),

    #[error("inversion of a series that is zero to its stated precision")]
    ZeroSeriesInverse,

    #[error("series not supported on q_D^{e} lattice (nonzero coefficient at exponent {exponent})")]
    RebaseUnsupported { e: i64, exponent: i64 },

    #[error("invalid W-vector [{0},{1},{2},{3}] at level {4}")]
    InvalidVector(i64, i64, i64, i64, u32),

    #[error("invalid cusp ({u}:{t}) at level {n}")]
    InvalidCusp { u: i64, t: i64, n: u32 },

    #[error("expression parse error: {0}")]
    Parse(String),

    #[error("non-rational coefficient in expansion at <1/1>: {0}")]
    NonRationalAtP(String),

    #[error("linear system is singular or inconsistent: {0}")]
    SingularSystem(String),

    #[error("insufficient working precision: {0}")]
    PrecisionInsufficient(String),

    #[error("generator search failed: {0}")]
    SearchFailed(String),

    #[error("point ({0}, {1}) does not lie on the curve")]
    PointNotOnCurve(String, String),

    #[error("no positive-order cusp killer exists at cusp <{u}/{d}>")]
    NoKiller { u: i64, d: u32 },

    #[error("pipeline stage `{stage}` failed: {message}")]
    Stage { stage: &'static str, message: String },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn stage(stage: &'static str, message: impl Into<String>) -> Self {
        Error::Stage {
            stage,
            message: message.into(),
        }
    }
}
