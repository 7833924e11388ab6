use thiserror::Error;

use crate::group::GroupTag;

/// Errors raised by the transforms, operator constructions and index methods.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported group tag `{0}`")]
    UnsupportedGroup(String),

    #[error("group mismatch: expected {expected:?}, found {found:?}")]
    GroupMismatch { expected: GroupTag, found: GroupTag },

    #[error("invalid dual label {label} for {group:?}")]
    InvalidLabel { group: GroupTag, label: i64 },

    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    #[error("point outside chart range: {0}")]
    ChartViolation(String),

    #[error("quadrature insufficient: integrands need exactness {needed}, rule provides {available}")]
    QuadratureInsufficient { needed: u32, available: u32 },

    #[error("sample count {found} does not match the {expected} quadrature nodes")]
    SampleCount { expected: usize, found: usize },

    #[error("function is not invertible: min |f| = {min_modulus:.3e} < {threshold:.3e}")]
    NotInvertible { min_modulus: f64, threshold: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("dual {label} exceeds the interior margin (bound {bound}, operator reach {reach})")]
    MarginViolation { label: i64, bound: u32, reach: u32 },

    #[error("invalid projection block for label {label}: {reason}")]
    InvalidProjection { label: i64, reason: String },

    #[error("projection has empty range")]
    EmptyRange,

    #[error("commutator count must be odd and positive, got {0}")]
    EvenFactorCount(usize),

    #[error("winding grid too coarse: phase jump of {jump:.3} rad between samples {index} and {next}")]
    PhaseJump { jump: f64, index: usize, next: usize },

    #[error("ambiguous kernel filter: a kernel vector carries {edge_mass:.3} of its mass in the edge band; raise the bandwidth")]
    AmbiguousFilter { edge_mass: f64 },

    #[error("decomposition failed: {0}")]
    Decomposition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
