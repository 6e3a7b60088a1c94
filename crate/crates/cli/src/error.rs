use std::path::PathBuf;

use diffconv::Error;

/// Failure of one command, carrying its process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    /// 0 ok, 1 mismatch, 2 out-of-range argument, 3 non-cyclic alpha,
    /// 4 parse or I/O error, 5 beyond decoding capacity, 6 not a codeword.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Io { .. } => 4,
            CliError::Core(e) => match e {
                Error::NotCyclicVector => 3,
                Error::Parse { .. } | Error::Format { .. } | Error::CoefficientOutOfRange { .. } => 4,
                Error::ZeroDenominator => 4,
                Error::BeyondCapacity(_) | Error::UnsupportedOffset(_) => 5,
                Error::NotACodeword => 6,
                Error::TrialMismatch(_) | Error::Internal(_) => 1,
                _ => 2,
            },
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;
