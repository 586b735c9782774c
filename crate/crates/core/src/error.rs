use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("covariance is not positive semidefinite: {0}")]
    NotPositiveSemidefinite(String),

    #[error("singular matrix (pivot {pivot:e} at column {column})")]
    SingularMatrix { column: usize, pivot: f64 },

    #[error("basis matrix is singular")]
    SingularBasis,

    #[error("transport problem is infeasible")]
    Infeasible,

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error(
        "degenerate LP: basic variable t[{index}] = {value:e} is at or below the degeneracy threshold \
         (pass --allow-degenerate to continue)"
    )]
    Degenerate { index: usize, value: f64 },

    #[error("direction of interest has vanishing variance (sigma^2 = {sigma2:e})")]
    DegenerateDirection { sigma2: f64 },

    #[error("empty truncation region: {0}")]
    EmptyRegion(String),

    #[error("probability mass underflows even in log space: {0}")]
    NumericalUnderflow(String),

    #[error(
        "pivot root for target {target} not bracketed in [{lo}, {hi}] \
         (pivot values {f_lo:e}, {f_hi:e})"
    )]
    RootNotBracketed {
        target: f64,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
