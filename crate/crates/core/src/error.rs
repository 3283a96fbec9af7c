use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),

    #[error("exponent must be at least 1")]
    ZeroExponent,

    #[error("modulus {p}^{l} exceeds 2^31")]
    ModulusTooLarge { p: u64, l: u32 },

    #[error("{0} is not an odd prime power")]
    NotPrimePower(u64),

    #[error("{value} is not a unit (valuation {valuation})")]
    NonUnit { value: u64, valuation: u32 },

    #[error("{root} is not a root of the polynomial mod p")]
    NotARoot { root: i64 },

    #[error("{root} is a singular root mod p (derivative vanishes)")]
    SingularRoot { root: i64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands live over different moduli ({0} vs {1})")]
    ModulusMismatch(u64, u64),

    #[error("index {index} out of range (must be below {limit})")]
    OutOfRange { index: u64, limit: u64 },

    #[error("zero vector has no lines through it")]
    ZeroVector,

    #[error("({a}, {b}) does not satisfy a^2 + b^2 = 1")]
    NotARotation { a: u64, b: u64 },

    #[error("table entry {index} is negative ({value})")]
    NegativeValue { index: usize, value: f64 },

    #[error("point set does not carry a product tag")]
    MissingProductTag,

    #[error("requested {requested} points but the space only has {available}")]
    SizeTooLarge { requested: u64, available: u64 },

    #[error("modulus {q} is too large for exhaustive planar checks")]
    TooLarge { q: u64 },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
