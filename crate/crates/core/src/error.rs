use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("group file line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: String, b: String, c: String },

    #[error("unsupported catalog group: {0}")]
    Catalog(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("group of order {size} exceeds the enumeration guard of {guard} elements")]
    GuardExceeded { size: String, guard: u64 },

    #[error("series error: {0}")]
    Series(String),

    #[error("invalid input: {0}")]
    Input(String),
}
