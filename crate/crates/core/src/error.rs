use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("document {doc} is empty")]
    EmptyDocument { doc: usize },

    #[error("rotation index {index} out of range for string of length {len}")]
    RotationOutOfRange { index: usize, len: usize },

    #[error("string of length {len} has no cyclic type anchor (length < 2 or not primitive)")]
    NotPrimitive { len: usize },

    #[error("conjugate array length mismatch: {0}")]
    LengthMismatch(String),

    #[error("seed ({pos},{doc}) is not an LMS position")]
    NotLms { pos: usize, doc: usize },

    #[error("document {doc} has length {len}, shorter than the window length {w}")]
    DocumentTooShort { doc: usize, len: usize, w: usize },

    #[error("document {doc} contains no trigger string")]
    NoTrigger { doc: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("offset {k} is outside the owned range 1..={max} of phrase {phrase}")]
    OffsetOutOfRange { k: usize, max: usize, phrase: u32 },

    #[error("position {0} out of range in parse eBWT")]
    PositionOutOfRange(usize),

    #[error("corrupt eBWT: {0}")]
    CorruptEbwt(String),

    #[error("malformed FASTA in {path}: {msg}")]
    Fasta { path: PathBuf, msg: String },

    #[error("malformed {kind} file: {msg}")]
    Format { kind: &'static str, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
