use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(u32),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("arity mismatch: {left} parties vs {right} parties")]
    ArityMismatch { left: usize, right: usize },

    #[error("exponent {exp} out of range for d = {d}")]
    ExponentOutOfRange { exp: u32, d: u32 },

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("invalid family parameters: {0}")]
    InvalidParams(String),

    #[error("invalid party subset: {0}")]
    InvalidSubset(String),

    #[error("capacity exceeded: {what} needs {needed}, limit is {limit}")]
    Capacity {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("state is not an eigenvector of row {row}")]
    NotEigen { row: usize },

    #[error("eigenvalue of row {row} is not a d-th root of unity")]
    OffLattice { row: usize },

    #[error("rows {0} and {1} do not commute")]
    NonCommuting(usize, usize),

    #[error("projector vectors are not orthogonal at party {0}")]
    NonOrthogonal(usize),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("invalid search spec: {0}")]
    InvalidSearch(String),

    #[error("document error: {0}")]
    Document(String),
}
