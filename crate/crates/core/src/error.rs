use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("representation mismatch: {left} vs {right}")]
    RepresentationMismatch { left: String, right: String },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid unitriangular matrix: {0}")]
    InvalidMatrix(String),
    #[error("group too large: closure exceeded the cap of {cap} elements")]
    TooLarge { cap: usize },
    #[error("element is not a member of the group")]
    NotMember,
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("generator list is empty")]
    NoGenerators,
}

/// Failure of a checked identity or of an operation's precondition.
///
/// `TheoremViolation` means a guaranteed identity failed on concrete data; it
/// always points at an implementation bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("theorem violation [{law}]: {detail}")]
    TheoremViolation { law: &'static str, detail: String },
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Hall(#[from] HallError),
}

impl CheckError {
    pub fn violation(law: &'static str, detail: impl Into<String>) -> Self {
        CheckError::TheoremViolation { law, detail: detail.into() }
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, CheckError::TheoremViolation { .. } | CheckError::Inconsistency(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HallError {
    #[error("nilpotency class {gamma} outside supported range 1..={max}")]
    ClassOutOfRange { gamma: usize, max: usize },
    #[error("integer overflow in free nilpotent arithmetic")]
    Overflow,
    #[error("basis index {0} out of range")]
    BadIndex(usize),
    #[error("theorem violation [{law}]: {detail}")]
    Violation { law: &'static str, detail: String },
}
