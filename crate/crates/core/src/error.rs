use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system {lie_type}{rank}: {reason}")]
    InvalidType {
        lie_type: String,
        rank: usize,
        reason: String,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("basis mismatch: expected {expected}, got {got}")]
    Basis { expected: String, got: String },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("Weyl group has {order} elements, over the budget of {budget}")]
    GroupBudget { order: u128, budget: usize },
    #[error("Bruhat interval exceeded the budget of {budget} elements ({visited} visited so far)")]
    IntervalBudget { budget: usize, visited: usize },
    #[error("minimal path enumeration exceeded the budget of {budget} paths")]
    PathBudget { budget: usize },
    #[error("chamber not unique: translation {0:?} is not regular")]
    NotRegular(Vec<i64>),
    #[error("coweight is not dominant: {0}")]
    NotDominant(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("polygon error: {0}")]
    Polygon(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
