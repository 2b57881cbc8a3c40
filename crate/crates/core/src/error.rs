use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("invalid mutation strength k={k} for length n={n}")]
    InvalidStrength { k: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("invalid ruggedness gamma={gamma} for v_max={v_max} (at most {max})")]
    InvalidGamma {
        gamma: usize,
        v_max: usize,
        max: usize,
    },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("unknown instance id {0}")]
    UnknownInstance(u32),
    #[error("empty population")]
    EmptyPopulation,
    #[error("unknown {slot} operator index {index}")]
    UnknownOperator { slot: &'static str, index: usize },
    #[error("insufficient offspring: need {needed}, got {got}")]
    InsufficientOffspring { needed: usize, got: usize },
    #[error("parse error at token {token} ({text:?}): {reason}")]
    Parse {
        token: usize,
        text: String,
        reason: String,
    },
    #[error("unknown baseline {0:?}")]
    UnknownBaseline(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("value {value} outside [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("logger protocol violation: {0}")]
    Protocol(String),
    #[error("histogram shape mismatch")]
    ShapeMismatch,
    #[error("AUC undefined for a histogram without runs")]
    UndefinedAuc,
    #[error("configuration error: {0}")]
    Config(String),
}
