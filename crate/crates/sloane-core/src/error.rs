use alloc::string::String;
use core::fmt;

/// Errors produced by the library.
///
/// Every operation that can reject its input reports one of these variants;
/// numeric computations themselves are total and do not fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A positional base must be at least 2.
    BaseTooSmall { b: u32 },
    /// A digit was not in `0..base`.
    DigitOutOfRange { digit: u32, base: u32 },
    /// Digit statistics were produced in a different base than required.
    BaseMismatch { expected: u32, found: u32 },
    /// An epsilon must satisfy `0 < num/den < 1`.
    InvalidEpsilon { num: u64, den: u64 },
    /// Block length for block statistics must be at least 1.
    BlockLengthZero,
    /// The number has fewer digits than the requested block length.
    BlockTooLong { digits: u64, block: u64 },
    /// An orbit budget field must be at least 1.
    BudgetField { field: &'static str },
    /// An empty or reversed range was given.
    EmptyRange { lo: u64, hi: u64 },
    /// Checkpoint list for growth reports is malformed.
    InvalidCheckpoints { why: &'static str },
    /// The requested map is outside the domain of this operation.
    UnsupportedMap { why: &'static str },
    /// Lemma-check input outside the lemma's hypothesis.
    OutsideLemmaDomain { why: &'static str },
    /// Root bracketing failed: no sign change over the bracket.
    NoSignChange,
    /// Root specification is malformed (bracket or tolerance).
    InvalidRootSpec { why: &'static str },
    /// Working precision was raised to the limit without separating the
    /// two sides of an inequality.
    PrecisionExhausted { bits: usize },
    /// A scan specification violates its invariants.
    InvalidScanSpec(String),
    /// A multiplier schedule is inconsistent with the prime set.
    InvalidSchedule(String),
    /// A chain record must be a nonempty, strictly ascending list of
    /// positive integers.
    InvalidChain(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BaseTooSmall { b } => write!(f, "base must be at least 2, got {b}"),
            Error::DigitOutOfRange { digit, base } => {
                write!(f, "digit {digit} out of range for base {base}")
            }
            Error::BaseMismatch { expected, found } => {
                write!(f, "base mismatch: expected {expected}, found {found}")
            }
            Error::InvalidEpsilon { num, den } => {
                write!(f, "epsilon {num}/{den} must lie strictly between 0 and 1")
            }
            Error::BlockLengthZero => write!(f, "block length must be at least 1"),
            Error::BlockTooLong { digits, block } => {
                write!(f, "number has {digits} digits, fewer than block length {block}")
            }
            Error::BudgetField { field } => {
                write!(f, "orbit budget field `{field}` must be at least 1")
            }
            Error::EmptyRange { lo, hi } => write!(f, "empty range: {lo}..={hi}"),
            Error::InvalidCheckpoints { why } => write!(f, "invalid checkpoints: {why}"),
            Error::UnsupportedMap { why } => write!(f, "unsupported map: {why}"),
            Error::OutsideLemmaDomain { why } => write!(f, "outside lemma domain: {why}"),
            Error::NoSignChange => write!(f, "no sign change over the bracket"),
            Error::InvalidRootSpec { why } => write!(f, "invalid root spec: {why}"),
            Error::PrecisionExhausted { bits } => {
                write!(f, "could not separate inequality sides at {bits} bits of precision")
            }
            Error::InvalidScanSpec(why) => write!(f, "invalid scan spec: {why}"),
            Error::InvalidSchedule(why) => write!(f, "invalid schedule: {why}"),
            Error::InvalidChain(why) => write!(f, "invalid chain: {why}"),
        }
    }
}

impl core::error::Error for Error {}
