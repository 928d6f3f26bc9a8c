use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alphabet needs at least two distinct symbols, got {0}")]
    AlphabetTooSmall(usize),
    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(char),
    #[error("symbol {symbol:?} is not in the alphabet {alphabet:?}")]
    UnknownSymbol { symbol: char, alphabet: String },
    #[error("symbol index {index} out of range for alphabet of size {size}")]
    SymbolIndex { index: usize, size: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("sequences are over different alphabets")]
    AlphabetMismatch,
    #[error("position set frame {frame} does not match sequence length {len}")]
    FrameMismatch { frame: usize, len: usize },
    #[error("position {position} outside frame {frame}")]
    PositionOutOfFrame { position: usize, frame: usize },
    #[error("positions of a plain set must be strictly increasing")]
    NotStrictlyIncreasing,
    #[error("patch has {patch} symbols but position set has {positions}")]
    SizeMismatch { patch: usize, positions: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("window length {window} exceeds string {index} of length {len}")]
    WindowTooLong { window: usize, index: usize, len: usize },
    #[error("invalid parameter: {0}")]
    Domain(String),
    #[error("candidate budget exceeded: {detail}")]
    BudgetExceeded { detail: String },
    #[error("conditional-probability estimator starts at {0:.6} >= 1; epsilon' too small for a guarantee")]
    EstimatorAtLeastOne(f64),
    #[error("LP solver failure: {0}")]
    NumericalFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
