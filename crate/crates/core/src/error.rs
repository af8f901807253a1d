use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An operation was called outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate data: {0}")]
    Degenerate(String),

    #[error("root finding failed: {0}")]
    RootFinding(String),

    /// The boundary datum has a singularity on the curve, so it lies in
    /// the full field of restrictions but not in the smooth subspace.
    #[error("boundary datum has a pole on the boundary near {0}")]
    NotSmoothOnBoundary(Complex64),

    /// Evaluation hit a pole. `principal_part[n]` is the coefficient of
    /// `(x - pole)^-(n+1)` in the local coordinate named by `coordinate`.
    #[error("pole at {pole} ({coordinate} coordinate)")]
    Pole {
        pole: Complex64,
        coordinate: &'static str,
        principal_part: Vec<Complex64>,
    },

    #[error("point {0} lies outside the closed domain")]
    OutsideDomain(Complex64),

    #[error("map is not univalent on the closed disc: {0}")]
    NotUnivalent(String),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("degree bound failed: interpolation residual {residual:e}")]
    DegreeBound { residual: f64 },

    #[error("ill-conditioned principal-part matching (condition estimate {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("input is not the boundary trace of a disc-holomorphic function: {0}")]
    NotHolomorphic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
