use thiserror::Error;

/// Errors raised by channel construction, quadrature, and the symbolic engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid projector family: {0}")]
    InvalidFamily(String),

    #[error("resolution of unity violated: max deviation {deviation:.3e} exceeds {tolerance:.1e}")]
    ResolutionOfUnity { deviation: f64, tolerance: f64 },

    #[error("eigensolver failure: {0}")]
    Eigensolver(String),

    #[error("spin 2s = {0} outside the supported range 1..=50")]
    SpinOutOfRange(u32),

    #[error("harmonic degree l = {l} outside 0..=2s = {two_s}")]
    DegreeOutOfRange { l: u32, two_s: u32 },

    #[error("quadrature exact degree {exact} is below the required {required}")]
    QuadratureTooCoarse { exact: u32, required: u32 },

    #[error("|alpha|^2 = {norm_sqr:.4} exceeds truncation bound {bound:.4} for dimension {dim}")]
    Truncation { norm_sqr: f64, bound: f64, dim: usize },

    #[error("polynomial degree {degree} exceeds the truncation guard for dimension {dim}")]
    DegreeTooHigh { degree: u32, dim: usize },

    #[error("fixed-space degree N = {0} outside 0..=12")]
    FixedSpaceOutOfRange(u32),

    #[error("{0}")]
    Parse(#[from] crate::algebra::ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
