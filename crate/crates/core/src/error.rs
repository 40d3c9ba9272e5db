use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

/// Errors raised by the geometry core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("mode mismatch: cannot combine exact and float operands")]
    ModeMismatch,
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("coincident points {0} and {1}")]
    Coincident(usize, usize),
    #[error("degenerate angle window: the center coincides with an endpoint")]
    DegenerateWindow,
    #[error("first three points are collinear; circumcircle undefined")]
    CollinearBase,
    #[error("operation requires exact coordinates; use the clustering path for float configurations")]
    NotExact,
    #[error("operation requires float coordinates")]
    NotFloat,
    #[error("point index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("pinned indices must be distinct (got {0} twice)")]
    RepeatedPin(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("generated points are not in general position ({collinear} collinear triples, {concyclic} concyclic quadruples); {hint}")]
    NotGeneralPosition {
        collinear: usize,
        concyclic: usize,
        hint: String,
    },
    #[error("gave up after {retries} placement retries; last violating tuple {tuple:?}")]
    RetriesExhausted { retries: usize, tuple: Vec<usize> },
    #[error("empty histogram")]
    EmptyHistogram,
}
