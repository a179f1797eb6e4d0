use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero divisor has no inverse")]
    ZeroDivisor,
    #[error("division by zero")]
    Zero,
    #[error("schema error: {0}")]
    Schema(String),
    #[error("bidegree ({m}, {n}) exceeds cap {cap}")]
    DegreeOverflow { m: usize, n: usize, cap: usize },
    #[error("quadrature did not reach tolerance {tol:e} (last change {change:e})")]
    QuadratureDivergence { tol: f64, change: f64 },
    #[error("finite-difference stencil leaves the unit disk at {0}")]
    StencilOutOfDomain(String),
    #[error("fixed-point iteration did not converge after {iterations} iterations (last change {change:e})")]
    NonConvergence { iterations: usize, change: f64 },
    #[error("decoupling requires componentwise conjugation (bar_ij), got {0}")]
    Convention(String),
    #[error("coefficient condition violated for k = {0:?}")]
    CoefficientCondition(Vec<usize>),
    #[error("function is not in the class: residual {residual:e} exceeds {tol:e}")]
    NotInClass { residual: f64, tol: f64 },
    #[error("invalid Stolz path: {0}")]
    PathInvalid(String),
    #[error("extrapolation unstable: successive differences {0:e} then {1:e}")]
    ExtrapolationUnstable(f64, f64),
    #[error("precondition failed: {0}")]
    Precondition(String),
}
