use thiserror::Error;

/// Everything that can go wrong while building, encoding, decoding or
/// verifying a code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field width b = {0} is outside the supported range 3..=16")]
    UnsupportedWidth(u32),

    #[error("polynomial {poly:#x} does not have degree {b}")]
    BadDegree { b: u32, poly: u32 },

    #[error("polynomial {poly:#x} is not primitive over GF(2): alpha has order {order}, expected {expected}")]
    NonPrimitivePolynomial {
        poly: u32,
        order: u32,
        expected: u32,
    },

    #[error("division by zero in GF(2^b)")]
    DivideByZero,

    #[error("value {value} is not an element of GF(2^{b})")]
    NotAnElement { value: u32, b: u32 },

    #[error("bad dimensions: {0}")]
    BadDimensions(String),

    #[error("matrices are defined over different fields")]
    FieldMismatch,

    #[error("matrix is rank deficient: no pivot in column {column}")]
    RankDeficient { column: usize },

    #[error("linear system is singular")]
    Singular,

    #[error("erasure budgets must be non-decreasing, got {0:?}")]
    NotNonDecreasing(Vec<usize>),

    #[error("{0}")]
    OutOfRange(String),

    #[error("row length n = {n} exceeds the field's multiplicative order {max}")]
    LengthExceedsField { n: usize, max: usize },

    #[error("array has m = {m} rows but rows have length n = {n}; m <= n is required")]
    ProfileTooTall { m: usize, n: usize },

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("uncorrectable: {0}")]
    Uncorrectable(String),

    #[error("invalid parity placement: {0}")]
    InvalidPlacement(String),

    #[error("exhaustive enumeration needs {needed} checks, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
