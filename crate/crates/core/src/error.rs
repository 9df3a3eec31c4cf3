use thiserror::Error;

/// Errors produced by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("format error: {0}")]
    Format(String),
    #[error("tile set is not directed: {0}")]
    NotDirected(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("symbol {symbol} is outside the alphabet of size {size}")]
    Alphabet { symbol: u8, size: u8 },
    #[error("invalid instance: {0}")]
    Validation(String),
    #[error("packing error: {0}")]
    Packing(String),
    #[error("instance carries no transition order")]
    MissingOrder,
    #[error("wrong instance variant: {0}")]
    Variant(String),
    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(u64),
    #[error("no tile set of size <= {0} assembles the pattern")]
    BudgetExhausted(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}
