use thiserror::Error;

use crate::oracle::EnumerationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground size {n} out of range {min}..={max}")]
    GroundSizeOutOfRange { n: u32, min: u32, max: u32 },

    #[error("word {word:#b} has elements outside [{n}]")]
    WordOutOfRange { word: u32, n: u32 },

    #[error("ground size mismatch: {left} vs {right}")]
    GroundMismatch { left: u32, right: u32 },

    #[error("S^C = [n] generates the empty family, which is not maximal")]
    ImproperGenerator,

    #[error("linear form needs a nonempty S")]
    EmptyLinearForm,

    #[error("family is not delta-free")]
    NotDeltaFree,

    #[error("enumeration budget exhausted after {} families", partial.total)]
    BudgetExhausted { partial: Box<EnumerationReport> },

    #[error("enumeration report is incomplete")]
    IncompleteReport,

    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line, msg: msg.into() }
    }
}
