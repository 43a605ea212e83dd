use num_bigint::BigUint;
use thiserror::Error;

/// Everything that can go wrong in `lhall-core`.
///
/// Indices carried by these variants are 1-based, matching how the
/// sequences are written by hand (`s₁…sₙ`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty sequence")]
    EmptySequence,
    #[error("nonpositive entry at index {index}")]
    NonPositiveEntry { index: usize },
    #[error("entry at index {index} exceeds {max}")]
    EntryTooLarge { index: usize, max: u64 },
    #[error("invalid sequence text {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("word is over radices ({found}), expected ({expected})")]
    RadixMismatch { expected: String, found: String },
    #[error("digit {digit} at index {index} is outside <{max}>")]
    DigitOutOfRange { index: usize, digit: u64, max: u64 },
    #[error("not a lattice point of Par_s: {reason}")]
    NotInParallelepiped { reason: String },
    #[error("not a lattice point of the dilation t*P_s: {reason}")]
    NotInDilation { reason: String },
    #[error("cannot drop the last coordinate of a length-1 vector")]
    DropLastTooShort,
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operation requires s_1 = 1, got s_1 = {first}")]
    RequiresFirstEntryOne { first: u64 },
    #[error("operation requires s_n = 1, got s_n = {last}")]
    RequiresLastEntryOne { last: u64 },
    #[error("radices must be (n, n-1, ..., 1)")]
    NotInversionShape,
    #[error("sequence must be (1, 2, ..., n)")]
    NotLectureShape,
    #[error("not a permutation of 1..={n}")]
    NotPermutation { n: usize },
    #[error("word must start and end with a radix-1 zero digit")]
    NotTildeShape,
    #[error("truncation order {order} is below n + 1 = {min}")]
    TruncationTooLow { order: u64, min: u64 },
    #[error("size cap exceeded: needs at least {required} points, cap is {cap}")]
    SizeCap { required: BigUint, cap: u64 },
    #[error("arithmetic overflow in {context}")]
    Overflow { context: &'static str },
}

impl Error {
    /// True for the size-cap failure, which callers usually report separately.
    pub fn is_size_cap(&self) -> bool {
        matches!(self, Error::SizeCap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
