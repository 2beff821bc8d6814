use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series did not converge within {iterations} iterations")]
    NonConvergent { iterations: usize },
    #[error("lower parameter c = {0} is a nonpositive integer")]
    InvalidC(f64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("h-polynomial decomposition left a nonzero residual at degree {0}")]
    DecompositionFailure(usize),
    #[error("coefficient extrapolation is ill-conditioned at degree {degree} (disagreement {disagreement:e})")]
    IllConditioned { degree: usize, disagreement: f64 },
    #[error("every candidate angle is (nearly) a zero of p_{0} on the unit circle")]
    AngleDegenerate(usize),
    #[error("root iteration did not converge (max residual {0:e})")]
    NoConvergence(f64),
    #[error("coefficient {index} is not positive")]
    NonPositiveCoefficient { index: usize },
    #[error("non-divisibility hypothesis fails at index {0}")]
    HypothesisViolation(usize),
    #[error("family is not admissible (fails at k = {witness})")]
    NotAdmissible { witness: u64 },
    #[error("empty family of angles")]
    EmptyFamily,
    #[error("membership undecidable: {0}")]
    UncomparableRepresentation(String),
    #[error("lower-bound construction exceeded {0} steps")]
    StepLimit(usize),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
