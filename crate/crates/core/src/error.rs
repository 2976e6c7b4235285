use thiserror::Error;

/// Failures of the exact algebra layer.
///
/// Most of these are precondition violations. In the certification pipeline
/// a `NotDivisible` or `OddExponent` is not a bug but a refuted claim, so the
/// variants carry enough context to say which one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("not divisible (remainder of degree {remainder_degree})")]
    NotDivisible { remainder_degree: usize },
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("odd exponent of `{var}` in term {term}")]
    OddExponent { var: String, term: String },
    #[error("polynomial is constant in `{0}`")]
    DegreeZero(String),
    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(String),
    #[error("points do not fit a polynomial of degree <= {0}")]
    DegreeExceeded(usize),
    #[error("non-integral coefficient {0} after interpolation")]
    NonIntegral(String),
    #[error("interval endpoint {0} is a root")]
    EndpointIsRoot(String),
    #[error("empty interval: lower endpoint is not below upper endpoint")]
    EmptyInterval,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("zero is a root")]
    ZeroIsRoot,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
