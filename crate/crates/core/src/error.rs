use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("distribution is empty")]
    Empty,
    #[error("entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: f64 },
    #[error("entries sum to {sum}, not 1")]
    BadSum { sum: f64 },
    #[error("index {index} out of range for {len} colors")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("laws have different lengths ({left} vs {right})")]
    IndexMismatch { left: usize, right: usize },
    #[error("{m} colors exceeds the exact-solve limit of {max}")]
    TooManyColors { m: usize, max: usize },
    #[error("{what} = {value} is outside its domain")]
    DomainError { what: &'static str, value: f64 },
    #[error("polynomial has no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("c must be positive, got {0}")]
    NonPositiveC(f64),
    #[error("parameters must be positive, got ({0}, {1})")]
    NonPositiveParameter(f64, f64),
    #[error("tolerance {0} is below the supported minimum")]
    InvalidTolerance(f64),
    #[error("quadrature could not reach tolerance {requested} (estimate {achieved})")]
    ToleranceNotMet { requested: f64, achieved: f64 },
    #[error("objective is not unimodal on the scan grid ({peaks} peaks)")]
    NotUnimodal { peaks: usize },
    #[error("left and right distributions cannot match: {reason}")]
    InvalidPair { reason: &'static str },
    #[error("{truncated} of {trials} trials hit the step limit")]
    ExcessTruncation { truncated: u64, trials: u64 },
    #[error("n = {0} is too small (need n >= 16)")]
    NTooSmall(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

impl Error {
    /// Stable identifier used in diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Empty => "Empty",
            Error::NegativeEntry { .. } => "NegativeEntry",
            Error::BadSum { .. } => "BadSum",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::IndexMismatch { .. } => "IndexMismatch",
            Error::TooManyColors { .. } => "TooManyColors",
            Error::DomainError { .. } => "DomainError",
            Error::NoSignChange { .. } => "NoSignChange",
            Error::NonPositiveC(_) => "NonPositiveC",
            Error::NonPositiveParameter(..) => "NonPositiveParameter",
            Error::InvalidTolerance(_) => "InvalidTolerance",
            Error::ToleranceNotMet { .. } => "ToleranceNotMet",
            Error::NotUnimodal { .. } => "NotUnimodal",
            Error::InvalidPair { .. } => "InvalidPair",
            Error::ExcessTruncation { .. } => "ExcessTruncation",
            Error::NTooSmall(_) => "NTooSmall",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
