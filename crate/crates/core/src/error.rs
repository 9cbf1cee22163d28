use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} is too large (must be below 65536)")]
    ModulusTooLarge(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace containment violated: {0}")]
    Containment(String),
    #[error("map does not preserve the subquotient: {0}")]
    NotInvariant(String),
    #[error("index {index} out of range: {range}")]
    IndexOutOfRange { index: usize, range: String },
    #[error("operator is not nilpotent of order {order}")]
    NotNilpotent { order: usize },
    #[error("invalid short exact sequence: {0}")]
    InvalidSequence(String),
    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("element order does not divide {p}: {word}")]
    WrongOrder { word: String, p: u32 },
    #[error("not an intertwiner: {0}")]
    NotIntertwiner(String),
    #[error("size budget exceeded: {what} needs {required_bytes} bytes, budget is {budget_bytes} bytes")]
    Budget {
        what: String,
        required_bytes: u64,
        budget_bytes: u64,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("trial {trial}: {source}")]
    Trial { trial: usize, source: Box<Error> },
}
