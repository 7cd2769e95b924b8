use thiserror::Error;

/// Errors raised by state construction, distance evaluation and the
/// quadrature-backed representations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("vector norm is {0}, expected 1")]
    InvalidNorm(f64),

    #[error("not positive semidefinite (eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("eigendecomposition did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("tail mass {tail:e} beyond dimension {dim} exceeds tolerance {tol:e}")]
    TailMass { dim: usize, tail: f64, tol: f64 },

    #[error("truncation infeasible: dimension {needed} exceeds the cap of {cap}")]
    TruncationInfeasible { needed: usize, cap: usize },

    #[error("degenerate normalization: {0}")]
    DegenerateNormalization(String),

    #[error("Mandel parameter undefined for a state with zero mean photon number")]
    UndefinedMandel,

    #[error("moment index ({k}, {l}) overflows truncation dimension {dim}")]
    MomentOverflow { k: usize, l: usize, dim: usize },

    #[error("moment cutoff too small: reconstructed trace deviates by {0:e}")]
    InsufficientCutoff(f64),

    #[error("moment table cutoff {have} is smaller than the requested order {need}")]
    TableTooSmall { have: usize, need: usize },

    #[error("phase-space grid too small: {0}")]
    GridTooSmall(String),

    #[error("tomogram grids differ")]
    GridMismatch,

    #[error("weight function is not normalized (integral {0})")]
    WeightNotNormalized(f64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Coarse grouping used by the command-line front end to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Numerical,
    Unsupported,
    Io,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) | Error::InvalidParameter(_) => ErrorClass::Parse,
            Error::Unsupported(_) => ErrorClass::Unsupported,
            Error::Io(_) => ErrorClass::Io,
            _ => ErrorClass::Numerical,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
