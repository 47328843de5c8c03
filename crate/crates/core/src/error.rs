use thiserror::Error;

/// Errors raised across the engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("cannot differentiate through `{0}`")]
    NotDifferentiable(String),

    #[error("not analytic at the expansion point: {0}")]
    NotAnalytic(String),

    #[error("not an exponential polynomial: {0}")]
    NotExpPoly(String),

    #[error("kernel operation outside the closed family: {0}")]
    OutsideFamily(String),

    #[error("limit diverges")]
    Diverges,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integrand is not separable: {0}")]
    NotSeparable(String),

    #[error("series did not converge: {0}")]
    NonConvergent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
