use std::path::PathBuf;

use filippov_core::{Error, VerificationReport};
use thiserror::Error;

/// Everything that stops a command. [`CliError::Rejected`] means the input
/// parsed but failed a check a construction depends on (exit code 1); every
/// other variant is a parse or shape problem (exit code 2).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("unknown kind {0:?}")]
    UnknownKind(String),

    #[error("{at}: bad rational literal {literal:?}")]
    BadRational { literal: String, at: String },

    #[error("{at}: unknown label {label:?}")]
    UnknownLabel { label: String, at: String },

    #[error("{0}")]
    Shape(String),

    #[error("{what}")]
    Rejected {
        what: String,
        report: Box<VerificationReport>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Rejected { .. } => 1,
            _ => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let what = e.to_string();
        match e {
            Error::PreconditionFailed { report, .. }
            | Error::InvalidQuadruple(report)
            | Error::InvalidCrossedModule(report)
            | Error::InvalidSymplectic(report) => CliError::Rejected { what, report },
            Error::NotSkeletal | Error::NotStrict => CliError::Rejected {
                what,
                report: Box::default(),
            },
            other => CliError::Core(other),
        }
    }
}
