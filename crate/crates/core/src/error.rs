use thiserror::Error;

use crate::pattern::ParamTriple;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("block count k must be at least 1")]
    ZeroBlocks,
    #[error("duplicate row label `{0}`")]
    DuplicateRow(String),
    #[error("duplicate column label `{0}`")]
    DuplicateCol(String),
    #[error("coefficient {index}: unknown row `{label}`")]
    UnknownRow { index: usize, label: String },
    #[error("coefficient {index}: unknown column `{label}`")]
    UnknownCol { index: usize, label: String },
    #[error("coefficient index {0} appears more than once")]
    DuplicateIndex(usize),
    #[error("coefficient {index}: duplicate nonzero ({row}, {col})")]
    DuplicateNonzero { index: usize, row: String, col: String },
    #[error("no value supplied for parameters {0:?}")]
    MissingParameters(Vec<ParamTriple>),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("value {value} is not an element of GF({modulus})")]
    NotInField { value: String, modulus: u32 },
    #[error("number of trials must be positive")]
    ZeroTrials,
    #[error("oracle guard exceeded: {what} = {actual} > {limit}")]
    GuardExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("certificate check failed: {0}")]
    Certificate(String),
    #[error("invalid input: {0}")]
    Input(String),
}
