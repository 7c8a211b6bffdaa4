//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("inverse of zero requested")]
    ZeroInverse,

    #[error("operands belong to different fields (GF({left}) vs GF({right}))")]
    DescriptorMismatch { left: u32, right: u32 },

    #[error("quadratic character is undefined in characteristic 2 (q = {0})")]
    EvenCharacteristic(u32),

    #[error("q = {q} is not supported here: {reason}")]
    UnsupportedField { q: u32, reason: &'static str },

    #[error("matrix has an impossible support pattern for a unimodular matrix")]
    UnreachablePattern,

    #[error("group algebra elements live in different groups ({left} vs {right})")]
    GroupMismatch { left: String, right: String },

    #[error("element is not constant on support class {class}: {witness}")]
    NotInSpan {
        class: &'static str,
        witness: String,
    },

    #[error("integer overflow during exact computation")]
    IntegerOverflow,

    #[error("interpolation mismatch for {left}*{right} on basis element {basis}: fitted {fitted}, table {table}")]
    InterpolationMismatch {
        left: &'static str,
        right: &'static str,
        basis: &'static str,
        fitted: String,
        table: String,
    },

    #[error(
        "interpolation for {left}*{right} on {basis} does not give an integer polynomial: {detail}"
    )]
    NonIntegerFit {
        left: &'static str,
        right: &'static str,
        basis: &'static str,
        detail: String,
    },

    #[error("at least 3 distinct sample values of q > 2 are needed, got {0:?}")]
    Underdetermined(Vec<u32>),

    #[error("variant structure constants disagree: {0}")]
    VariantMismatch(String),

    #[error("span is not closed under multiplication: {0}")]
    NotClosed(String),

    #[error("element is not a scalar multiple of the idempotent under {0}")]
    NotRankOne(String),

    #[error("modulus {r} is not coprime to {bound}")]
    NotCoprime { r: u64, bound: u64 },

    #[error("invalid irreducible representation parameters: {0}")]
    InvalidSpec(String),

    #[error("coefficient sums differ between two classes of type {kind}: {first} vs {second}")]
    NotTypeConstant {
        kind: String,
        first: String,
        second: String,
    },

    #[error("value {re}+{im}i is not within 1e-6 of a nonnegative integer")]
    NotNearInteger { re: f64, im: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),
}
