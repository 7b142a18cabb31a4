use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("degenerate Stirling number requested with k = {k} > n = {n}")]
    StirlingIndex { n: usize, k: usize },

    #[error("series truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("series reciprocal needs constant term 1")]
    NonUnitConstant,

    #[error("series exponential needs constant term 0")]
    NonZeroConstant,

    #[error("cannot differentiate a series truncated at order 0")]
    ZeroOrder,

    #[error("initial sequence is empty")]
    EmptyInitial,

    #[error("matrix entry a[{n},{k}] lies outside the triangle n + k <= {size}")]
    EntryOutOfRange { n: usize, k: usize, size: usize },

    #[error("index {index} out of range for a sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("n_max = {n_max} exceeds the hard cap {cap}")]
    NMaxTooLarge { n_max: usize, cap: usize },
}
