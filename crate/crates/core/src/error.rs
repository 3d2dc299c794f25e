use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible rings: Z[zeta_{left}] vs Z[zeta_{right}]")]
    IncompatibleOrders { left: u32, right: u32 },

    #[error("coefficient {coefficient} is not divisible by {divisor}")]
    NotDivisible { coefficient: i64, divisor: i64 },

    #[error("integer overflow in cyclotomic arithmetic")]
    Overflow,

    #[error("invalid group parameters: {0}")]
    InvalidParams(String),

    #[error("group of order {size} exceeds the size bound {bound}")]
    SizeBound { size: u128, bound: u128 },

    #[error("dimension mismatch: {0}")]
    Mismatch(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("element is not in G({r},{p},{n})")]
    NotMember { r: u32, p: u32, n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
