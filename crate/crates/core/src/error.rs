use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid rational literal {0:?}: expected p or p/q")]
    Parse(String),
    #[error("invalid lambda {0}: need lambda > -1/2 and lambda != 0")]
    InvalidLambda(String),
    #[error("invalid beta {0}: need beta < 1")]
    InvalidBeta(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("series does not terminate: no numerator parameter is a nonpositive integer")]
    NonTerminating,
    #[error("denominator parameter {0} vanishes before the series terminates")]
    DenominatorPole(String),
    #[error("gamma function pole at argument {0}")]
    GammaPole(String),
    #[error("pole in denominator: {0}")]
    PoleInDenominator(String),
    #[error("undefined index: {0}")]
    UndefinedIndex(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("|t| = {0} outside the enforced convergence margin |t| < 1/4")]
    ConvergenceMarginViolated(f64),
    #[error("quadrature did not reach tolerance {tol:e} (estimate {estimate:e})")]
    ToleranceNotMet { tol: f64, estimate: f64 },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
