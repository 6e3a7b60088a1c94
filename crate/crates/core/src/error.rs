use thiserror::Error;

/// Errors raised by field arithmetic, code construction and decoding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not a supported prime (need a prime 3 <= p <= 31)")]
    UnsupportedPrime(u32),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different fields or derivations")]
    ContextMismatch,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("coefficient {value} is not reduced modulo {p}")]
    CoefficientOutOfRange { value: u64, p: u32 },
    #[error("derivation must send z to a nonzero element")]
    ZeroDerivation,
    #[error("designed distance out of range: d = {d}, p = {p}")]
    DesignedDistanceOutOfRange { d: usize, p: u32 },
    #[error("offset out of range: r = {r}, need r <= {max}")]
    OffsetOutOfRange { r: usize, max: usize },
    #[error("alpha is not a cyclic vector for the derivation (its Wronskian is singular)")]
    NotCyclicVector,
    #[error("expected length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("word is not a codeword")]
    NotACodeword,
    #[error("linear system has no solution")]
    InconsistentSystem,
    #[error("decoding is only supported for codes with offset r = 0 (got r = {0})")]
    UnsupportedOffset(usize),
    #[error("received word is beyond the decoding capacity: {0}")]
    BeyondCapacity(String),
    #[error("duplicate error position {0}")]
    DuplicatePosition(usize),
    #[error("error value at position {0} is zero")]
    ZeroErrorValue(usize),
    #[error("position {pos} out of range for length {len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("number of errors {v} out of range 1..={max}")]
    ErrorCountOutOfRange { v: usize, max: usize },
    #[error("trial mismatch: {0}")]
    TrialMismatch(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
