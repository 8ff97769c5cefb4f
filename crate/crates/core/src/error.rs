use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("division by zero in coefficient {0}")]
    DivisionByZero(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("duplicate variable {0}")]
    DuplicateVariable(String),
    #[error("parse error at offset {offset} in {input:?}: {message}")]
    Parse {
        input: String,
        offset: usize,
        message: String,
    },
    #[error("exponent vectors of different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("generator not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("expected a linear form, got {0}")]
    NotLinear(String),
    #[error("first ideal is not contained in the second")]
    NotContained,
    #[error("quotient does not have finite length")]
    InfiniteLength,
    #[error("{0}")]
    Degenerate(String),
    #[error("field {field} has fewer than {min} elements; small fields must be allowed explicitly")]
    FieldTooSmall { field: String, min: u64 },
    #[error("no filter-regular coordinate change found after {attempts} attempts starting at seed {seed}; use a larger field")]
    RetriesExhausted { attempts: u32, seed: u64 },
    #[error("monomial ideals only")]
    NotMonomial,
    #[error("{count} variables exceed the polyhedral limit of {max}")]
    TooManyVariables { count: usize, max: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("consistency check failed: {0}")]
    ConsistencyViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
