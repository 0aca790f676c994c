use thiserror::Error;

use crate::abelian::LevelReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("the presentation describes the empty shift space")]
    EmptyShift,

    #[error("point is not in the shift space")]
    NotInShift,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("resource cap exceeded: {what} would exceed {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    /// `a·E_i^{l+1}` met two distinct level-`l` classes.
    #[error("straddle at level {level}: symbol {symbol} maps class {class} into level-{level} classes {targets:?}")]
    Straddle {
        level: usize,
        class: usize,
        symbol: String,
        targets: Vec<usize>,
    },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("past-equivalence chain did not stabilise within {lmax} levels")]
    NotStabilized { lmax: usize, partial: Vec<LevelReport> },

    #[error("matrix is singular")]
    Singular,

    #[error("invalid transform: {0}")]
    InvalidTransform(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
