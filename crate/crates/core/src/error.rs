use thiserror::Error;

/// Errors raised by the algebraic routines in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not irreducible over F_{p}")]
    ReducibleModulus { p: u64 },
    #[error("malformed modulus: {0}")]
    BadModulus(String),
    #[error("no built-in modulus for q = {0}; supply one explicitly")]
    NoBuiltinModulus(u64),
    #[error("field of order {p}^{n} is too large")]
    FieldTooLarge { p: u64, n: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function is not a polynomial")]
    NotPolynomial,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("divisor is not monic of positive degree")]
    NotMonic,
    #[error("size limit exceeded: {what} needs {needed} > limit {limit}")]
    SizeLimit {
        what: &'static str,
        needed: u128,
        limit: u64,
    },
    #[error("invalid base {0}; need q >= 2")]
    BadBase(u64),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("malformed matrix: {0}")]
    BadShape(String),
    #[error("row {row} of the valuation matrix sums to {sum}, expected 0")]
    RowSumViolation { row: usize, sum: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
