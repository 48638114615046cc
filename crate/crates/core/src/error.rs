use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element with index {index} is already in the tree")]
    DuplicateElement { index: usize },

    #[error("element with index {index} is not in the tree")]
    MissingElement { index: usize },

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error(
        "length mismatch: sequence has {sequence} values, representation has {representation}"
    )]
    LengthMismatch {
        sequence: usize,
        representation: usize,
    },

    #[error("window size must be at least 1")]
    ZeroWindow,

    #[error("index was built with window {built:?}, search asked for window {requested}")]
    WindowMismatch {
        built: Option<usize>,
        requested: usize,
    },

    #[error("pattern {0} is empty")]
    EmptyPattern(usize),

    #[error("pattern set is empty")]
    EmptyPatternSet,

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
