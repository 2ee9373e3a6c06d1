use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("element {element} is outside Z_{omega}")]
    OutOfRange { element: i64, omega: usize },

    #[error("duplicate element {0} in set literal")]
    DuplicateElement(i64),

    #[error("malformed set literal: {0}")]
    SetLiteral(String),

    #[error("modulus mismatch: Z_{left} vs Z_{right}")]
    ModulusMismatch { left: usize, right: usize },

    #[error("operation requires a nonempty set")]
    EmptySet,

    #[error("{value} is not coprime to {modulus}")]
    NotCoprime { value: i64, modulus: u64 },

    #[error("expected a set of {expected} elements, found {found}")]
    CardinalityMismatch { expected: usize, found: usize },

    #[error("{what} = {value} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: u64,
        bound: u64,
    },

    #[error("{0} is not a subgroup")]
    NotSubgroup(&'static str),

    #[error("duplicate multiplier value {0}")]
    DuplicateMultiplier(i64),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid scan configuration: {0}")]
    Config(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}
