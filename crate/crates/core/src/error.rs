use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("unknown index {0}")]
    UnknownIndex(usize),
    #[error("index {0} is not real")]
    NotReal(usize),
    #[error("index {0} is not imaginary")]
    NotImaginary(usize),
    #[error("letter ({index},{level}) is not a generator of this datum")]
    InvalidLetter { index: usize, level: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("datum is not bar-consistent (d_i and p(i) must agree mod 2)")]
    NotBarConsistent,
    #[error("truncation overflow: {0}")]
    Truncation(String),
    #[error("odd-isotropic coefficient undefined: index {0} qualifies but no hook was supplied")]
    OddIsotropicUndefined(usize),
    #[error("series division impossible: constant term is not invertible")]
    NonInvertibleSeries,
    #[error("datum file {path}: {message}")]
    DatumFile { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
