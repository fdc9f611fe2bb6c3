//! Error types shared across the crate.
//!
//! Every variant carries a stable short code, used by the CLI for its
//! `error[CODE]:` diagnostic prefix and by the FFI layer as a numeric status.

use thiserror::Error;

/// Network validation and symbol resolution errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("multiplex-only cycle through `{0}`")]
    MultiplexCycle(String),
    #[error("threshold {threshold} of atom `{var}>={threshold}` outside [1, {bound}]")]
    ThresholdOutOfRange {
        var: String,
        threshold: i64,
        bound: i64,
    },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("parameter {symbol} = {value} outside [0, {bound}]")]
    ParamOutOfBounds {
        symbol: String,
        value: i64,
        bound: i64,
    },
    #[error("parameter index of {symbol} is not a subset of the predecessors of `{var}`")]
    ParamIndexNotSubsetOfPredecessors { symbol: String, var: String },
    #[error("assignment target {value} outside [0, {bound}] for `{var}`")]
    AssignOutOfRange { var: String, value: i64, bound: i64 },
    #[error("valuation does not assign {0}")]
    IncompleteValuation(String),
}

impl ModelError {
    pub fn code(&self) -> &'static str {
        match self {
            ModelError::MultiplexCycle(_) => "MX_CYCLE",
            ModelError::ThresholdOutOfRange { .. } => "THRESHOLD",
            ModelError::UnknownName(_) => "UNKNOWN_NAME",
            ModelError::DuplicateName(_) => "DUP_NAME",
            ModelError::ParamOutOfBounds { .. } => "PARAM_BOUNDS",
            ModelError::ParamIndexNotSubsetOfPredecessors { .. } => "PARAM_INDEX",
            ModelError::AssignOutOfRange { .. } => "ASSIGN_RANGE",
            ModelError::IncompleteValuation(_) => "VAL_INCOMPLETE",
        }
    }
}

/// Parse errors, with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "SYNTAX",
            ParseError::Model(e) => e.code(),
        }
    }
}

/// Resource caps hit during enumeration or oracle evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CapError {
    #[error("search space of {size} exceeds the configured cap of {cap}")]
    SizeLimitExceeded { size: u128, cap: u128 },
    #[error("oracle produced more than {cap} result sets")]
    ResultTooLarge { cap: usize },
    #[error("cross-check does not support `while` programs")]
    WhileNotSupportedForCrossCheck,
}

impl CapError {
    pub fn code(&self) -> &'static str {
        match self {
            CapError::SizeLimitExceeded { .. } => "SIZE_LIMIT",
            CapError::ResultTooLarge { .. } => "RESULT_LIMIT",
            CapError::WhileNotSupportedForCrossCheck => "WHILE_CROSSCHECK",
        }
    }
}
