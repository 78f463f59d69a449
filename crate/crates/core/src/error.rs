use thiserror::Error;

pub type Result<T> = std::result::Result<T, DepthError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DepthError {
    #[error("trapezoid parameters must satisfy a <= b <= c <= d, got ({a}, {b}, {c}, {d})")]
    OrderingViolation { a: f64, b: f64, c: f64, d: f64 },

    #[error("non-finite value")]
    NonFinite,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid support profile: {0}")]
    InvalidProfile(String),

    #[error("lower envelope exceeds upper envelope at alpha = {alpha}")]
    EnvelopeInverted { alpha: f64 },

    #[error("weights must be nonnegative and sum to 1: {0}")]
    Weight(String),

    #[error("generators are not ordered: first must precede second")]
    NotOrdered,

    #[error("sample of expanded size {0} is too small, need at least 2")]
    SampleTooSmall(usize),

    #[error("empty sample")]
    EmptySample,

    #[error("item {0} is not trapezoidal")]
    NotTrapezoidal(usize),

    #[error("probabilities must be nonnegative and sum to 1: {0}")]
    Probability(String),

    #[error("oracle returned an invalid value: {0}")]
    Oracle(String),

    #[error("quadrature error: {0}")]
    Quadrature(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}
