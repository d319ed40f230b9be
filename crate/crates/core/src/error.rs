use thiserror::Error;

/// Errors produced by the distribution, checking and configuration layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {value} lies outside the support [{lower}, {upper}]")]
    OutOfSupport { value: f64, lower: f64, upper: f64 },

    #[error("degenerate denominator at {at}: {what}")]
    DegenerateDenominator { at: f64, what: &'static str },

    #[error("probability {0} is not in the open interval (0, 1)")]
    InvalidProbability(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("vectors have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("closed-form reversed hazard rate requires unit shape parameters, component {index} has alpha = {alpha}")]
    ShapeNotUnit { index: usize, alpha: f64 },

    #[error("grid lower end {lo} does not exceed the largest location parameter {max_location}")]
    GridBelowLocation { lo: f64, max_location: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("generator family `{0}` has no frailty sampler")]
    UnsupportedGenerator(String),

    #[error("configuration requires {0}")]
    MissingGenerator(&'static str),

    #[error("evaluation failed at {point:?}: {reason}")]
    EvaluationFailure { point: Vec<f64>, reason: String },

    #[error("random-configuration policy exhausted after {attempts} rejected draws for {theorem}")]
    PolicyExhausted { theorem: String, attempts: usize },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("config error in `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn invalid(name: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name: name.into(),
        reason: reason.into(),
    }
}
