use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series coefficient {index} is not finite")]
    NonFinite { index: usize },
    #[error("denominator of 1/(cz+d) vanishes at the origin (d = 0)")]
    DegenerateDenominator,
    #[error("degenerate linear fractional map: ad - bc = 0")]
    Degenerate,
    #[error("map is not a self-map of the unit disk: {0}")]
    NotSelfMap(String),
    #[error("argument {0} lies outside the open unit disk")]
    ArgOutsideDisk(String),
    #[error("the identity map has no isolated fixed points")]
    IdentityMap,
    #[error("map is not hyperbolic with an interior fixed point: {0}")]
    NotHyperbolic(String),
    #[error("|lambda| = {0} is not unimodular")]
    NotUnitary(f64),
    #[error("beta = {0} is not an integer; use the truncated-matrix route")]
    NonIntegerBeta(f64),
    #[error("beta = {0} is an integer; use the exact Gram formula")]
    IntegerBeta(f64),
    #[error("invalid weight parameter beta = {0} (need beta >= -1)")]
    InvalidBeta(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("vector is not an eigenvector for {lambda}: residual {residual:e}")]
    NotAnEigenvector { lambda: String, residual: f64 },
    #[error("orbit left the closed unit disk at step {step}")]
    EscapedDisk { step: usize },
    #[error("exponent {lambda} is out of range (need lambda > {min})")]
    ExponentOutOfRange { lambda: f64, min: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("matrix is not a conjugation: {0}")]
    NotConjugation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
