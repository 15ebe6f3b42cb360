use std::fmt;

use crate::matroid::ElemSet;

/// Why a matroid failed to decompose into `k` disjoint bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotKBaseReason {
    /// `|E|` is not `k * rank(E)`, so no partition into k bases can exist.
    SizeMismatch { elements: usize, rank: usize, k: usize },
    /// A witness set `Y` proving that the union of k copies cannot cover the
    /// ground set: `|Y| + k * rank(E - Y) = value < |E|`.
    Uncoverable { witness: ElemSet, value: usize, elements: usize },
}

impl fmt::Display for NotKBaseReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotKBaseReason::SizeMismatch { elements, rank, k } => write!(
                f,
                "|E| = {elements} but k * rank = {k} * {rank} = {}",
                k * rank
            ),
            NotKBaseReason::Uncoverable { witness, value, elements } => write!(
                f,
                "witness set of size {} caps the union rank at {value} < |E| = {elements}",
                witness.len()
            ),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown element id {0}")]
    UnknownElement(String),

    #[error("unknown vertex id {0}")]
    UnknownVertex(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a {k}-base matroid: {reason}")]
    NotKBase { k: usize, reason: NotKBaseReason },

    #[error("no factorization satisfies the required containments: {0}")]
    NoFactorization(String),

    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn cert(msg: impl Into<String>) -> Self {
        Error::CertificateInvalid(msg.into())
    }
}
