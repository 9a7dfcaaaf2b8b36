use ordcalc_core::{CheckError, GroupError, HallError};
use thiserror::Error;

/// Every failure the driver can report, each with its own exit status.
#[derive(Debug, Error)]
pub enum AppError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("unknown group `{0}` (see `ordcalc catalog`)")]
    UnknownGroup(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("group too large: closure exceeded the cap of {0} elements")]
    Cap(usize),
    #[error("{0}")]
    Violation(String),
    #[error("golden mismatch: {0}")]
    Golden(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Io(_) => 1,
            AppError::Usage(_) => 2,
            AppError::UnknownGroup(_) => 3,
            AppError::Malformed(_) => 4,
            AppError::Cap(_) => 5,
            AppError::Violation(_) => 6,
            AppError::Golden(_) => 7,
        }
    }
}

impl From<GroupError> for AppError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::TooLarge { cap } => AppError::Cap(cap),
            other => AppError::Malformed(other.to_string()),
        }
    }
}

impl From<HallError> for AppError {
    fn from(e: HallError) -> Self {
        match e {
            HallError::ClassOutOfRange { .. } => AppError::Usage(e.to_string()),
            other => AppError::Violation(other.to_string()),
        }
    }
}

impl From<CheckError> for AppError {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::Precondition(_) | CheckError::Domain(_) => AppError::Usage(e.to_string()),
            CheckError::Hall(h) => h.into(),
            other => AppError::Violation(other.to_string()),
        }
    }
}
