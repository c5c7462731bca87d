use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("series has a nonzero constant term but the Taylor expansion is not a polynomial")]
    NonzeroConstantTerm,

    #[error("Taylor expansion has {have} coefficients, {need} needed for truncation order")]
    TaylorTooShort { have: usize, need: usize },

    #[error("invalid realization: {0}")]
    InvalidRealization(String),

    #[error("operation requires {required}, got {found}")]
    WrongRealization { required: &'static str, found: String },

    #[error("parameters do not fit this case: {0}")]
    WrongCase(String),

    #[error("invalid plane ({0}, {1})")]
    InvalidPlane(usize, usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("Newton iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("ODE error estimate {estimate:e} exceeds tolerance {tol:e}")]
    OdeNotConverged { estimate: f64, tol: f64 },

    #[error("degenerate Jacobian at iteration {0}")]
    DegenerateJacobian(usize),

    #[error("relation {relation} has a nonzero residual at indices {indices:?}")]
    NonzeroResidual { relation: String, indices: Vec<usize> },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
