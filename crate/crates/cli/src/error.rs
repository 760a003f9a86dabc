use std::path::PathBuf;

use thiserror::Error;

/// Failures of a CLI command, each mapped to a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: PathBuf, message: String },
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("invalid arguments: {0}")]
    Flags(String),
    #[error("partition cap exceeded: {0}")]
    Cap(String),
    #[error("not a frame: {0}")]
    NotAFrame(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Invalid { .. } => 2,
            CliError::Shape(_) => 3,
            CliError::Flags(_) => 4,
            CliError::Cap(_) => 5,
            CliError::NotAFrame(_) => 6,
            CliError::Io { .. } | CliError::Other(_) => 1,
        }
    }
}

impl From<cstar_frames::Error> for CliError {
    fn from(e: cstar_frames::Error) -> Self {
        use cstar_frames::Error as E;
        match e {
            E::ShapeMismatch { .. }
            | E::LengthMismatch { .. }
            | E::RepresentationSize { .. }
            | E::InvalidShape { .. }
            | E::EmptyFrame => CliError::Shape(e.to_string()),
            E::TooManyPartitions { .. } => CliError::Cap(e.to_string()),
            E::NotAFrame { .. } | E::SingularS { .. } => CliError::NotAFrame(e.to_string()),
            E::InvalidProfile(_)
            | E::NegativeEta(_)
            | E::NegativeMu(_)
            | E::NonPositiveXi(_)
            | E::TruncationTooLarge { .. }
            | E::IndexOutOfRange { .. }
            | E::ZeroMultiplicity { .. }
            | E::OddN(_)
            | E::NonzeroLimit(_)
            | E::FamilyCount { .. }
            | E::XiZero => CliError::Flags(e.to_string()),
            other => CliError::Other(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
