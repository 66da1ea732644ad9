use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size {0} outside 1..=26")]
    AlphabetSize(usize),
    #[error("symbol {symbol:?} at position {position} is outside the alphabet of size {sigma}")]
    SymbolOutOfAlphabet {
        symbol: char,
        position: usize,
        sigma: usize,
    },
    #[error("operation requires a non-empty word")]
    EmptyWord,
    #[error("index {index} out of range for word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("{p} is not a period of the word")]
    NotAPeriod { p: usize },
    #[error("word of length {len} is too short, need at least {min}")]
    TooShort { len: usize, min: usize },
    #[error("census: square {text} fits no category for k = {k}")]
    CensusMismatch { k: usize, text: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("necklace budget exceeded: estimated {estimated} necklaces, budget {budget}")]
    BudgetExceeded { estimated: u128, budget: u128 },
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
    #[error("corrupt campaign file {path}, line {line}: {reason}")]
    CorruptCsv {
        path: String,
        line: usize,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
