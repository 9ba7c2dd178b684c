//! Crate error type.

use std::path::PathBuf;

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A malformed line in a formats or abbreviations dictionary file.
    #[error("dictionary error at line {line}: {message}")]
    Dictionary { line: usize, message: String },

    /// A .zip or .tar.gz was opened without selecting a member.
    #[error("archive {path} holds multiple files; pass --inner with one of: {}", members.join(", "))]
    InnerRequired { path: PathBuf, members: Vec<String> },

    /// The requested archive member does not exist.
    #[error("member {member:?} not found in {path}; available: {}", members.join(", "))]
    MemberNotFound {
        path: PathBuf,
        member: String,
        members: Vec<String>,
    },

    /// Binary spreadsheet formats are not parsed.
    #[error("unsupported format: {path} (only delimited text is parsed; convert .xls/.xlsx to .csv first)")]
    UnsupportedFormat { path: PathBuf },

    #[error("{path}: no data rows")]
    NoDataRows { path: PathBuf },

    /// Delimiter detection was handed an empty sample.
    #[error("cannot detect delimiter: input sample is empty")]
    EmptySample,

    #[error("invalid semantic type name {name:?}")]
    UnknownTypeName { name: String },

    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn dictionary(line: usize, message: impl Into<String>) -> Self {
        Error::Dictionary {
            line,
            message: message.into(),
        }
    }
}
