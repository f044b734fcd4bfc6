use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by domain construction, quadrature, the solver and the drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("point {z} lies on or outside the domain, or closer than {min_distance:e} to its boundary")]
    PointOnOrOutsideBoundary { z: Complex64, min_distance: f64 },

    #[error("point {0} coincides with the puncture")]
    PointAtPuncture(Complex64),

    #[error("point is outside the domain: {0}")]
    OutOfDomain(String),

    #[error("operation requires symbolic form components")]
    SymbolicRequired,

    #[error("sampled form has no explicit D(f) data")]
    MissingDerivativeData,

    #[error("explicit D(f) disagrees with the exact value computed from the components")]
    InconsistentDerivative,

    #[error("Laurent term z2^{power} evaluated at z2 = 0")]
    LaurentPole { power: i32 },

    #[error("form is not dbar-closed (defect has {terms} nonzero terms)")]
    NotClosed { terms: usize },

    #[error(
        "weighted integral does not converge near z2 = 0 (value {coarse:e} at eps={eps_coarse:e}, {fine:e} at eps={eps_fine:e})"
    )]
    DivergentWeight { coarse: f64, fine: f64, eps_coarse: f64, eps_fine: f64 },

    #[error("monomial z^{a} zbar^{b} is not integrable near the puncture")]
    NonIntegrable { a: i32, b: u32 },

    #[error("residual grid point {z} is closer than {min_distance:e} to a boundary or puncture")]
    GridTooCloseToBoundary { z: Complex64, min_distance: f64 },

    #[error("result is not representable as a Laurent-monomial expression: {0}")]
    NotRepresentable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("output error: {0}")]
    Output(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Output(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Output(e.to_string())
    }
}
