use thiserror::Error;

use crate::coeff::{CoeffError, RingSpec};
use crate::syntax::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("no image given for generator #{0}")]
    MissingImage(u32),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
    #[error("generator {0:?} has negative degree; H0 extraction needs degrees >= 0")]
    NegativeDegreeGenerator(String),
    #[error("augmentation has no value for generator {0:?}")]
    MissingValue(String),
    #[error("ill-formed elementary automorphism: {0}")]
    IllFormedAuto(String),
    #[error("no degree-preserving relabeling exists: {0}")]
    NoRelabelPossible(String),
    #[error("relation index {index} out of range ({len} relations)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("presentation needs at least one generator and one relation")]
    EmptyPresentation,
    #[error("DGA pair does not have the shape of a group reduction: {0}")]
    NotGroupReduction(String),
    #[error("invalid shift polynomial: {0}")]
    InvalidShift(String),
    #[error("internal verification failure: {0}")]
    InternalVerificationFailure(String),
    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: RingSpec, found: RingSpec },
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("malformed DGA file: {0}")]
    MalformedDga(String),
    #[error("time budget exhausted")]
    TimeBudgetExhausted,
    #[error("search space too large: {0}")]
    SearchTooLarge(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
