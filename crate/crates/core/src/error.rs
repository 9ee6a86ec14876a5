use thiserror::Error;

/// Errors raised by the algebra, extensor and calculus layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("operands live over different metrics")]
    MetricMismatch,

    #[error("grade {grade} out of range for dimension {dim}")]
    GradeOutOfRange { grade: usize, dim: usize },

    #[error("expected a homogeneous multivector of grade {expected}")]
    NotHomogeneous { expected: usize },

    #[error("expected {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for arity {arity}")]
    VariableIndex { index: usize, arity: usize },

    #[error("extensor signature ({found_p},{found_q}) does not match expected ({expected_p},{expected_q})")]
    SignatureMismatch {
        expected_p: usize,
        expected_q: usize,
        found_p: usize,
        found_q: usize,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("frame vectors are linearly dependent (singular Gram matrix)")]
    DegenerateFrame,

    #[error("extensor is singular (det = {det:e})")]
    SingularExtensor { det: f64 },

    #[error("functional is not scalar-valued")]
    NotScalar,

    #[error("multivector is not invertible")]
    NotInvertible,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
