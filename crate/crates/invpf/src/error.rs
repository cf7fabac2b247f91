use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("exponent matrix is singular")]
    Singular,
    #[error("Calabi-Yau condition fails: sum of weights {sum} != degree {degree}")]
    NotCalabiYau { sum: u64, degree: u64 },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("basis recipe produced a negative exponent at alpha = {alpha}: {vertex:?}")]
    NegativeVertex { alpha: String, vertex: Vec<i64> },
    #[error("scale bound exceeded: {0}")]
    ScaleBound(String),
    #[error("time budget of {0} s exceeded")]
    Timeout(u64),
    #[error("element is not in the ideal")]
    NotInIdeal,
    #[error("lift certificate does not re-expand to the input")]
    LiftMismatch,
    #[error("unexpected nullspace dimension {0}")]
    Nullspace(usize),
    #[error("corpus error: {0}")]
    Corpus(String),
}
