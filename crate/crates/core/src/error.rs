use thiserror::Error;

use crate::relation::FamilyKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element {element} is outside the ground set of size {m}")]
    ElementOutOfRange { element: usize, m: usize },

    #[error("diagonal pair ({0}, {0}) has no profile")]
    DiagonalPair(usize),

    #[error("not a permutation of 0..{m}: {detail}")]
    InvalidPermutation { m: usize, detail: String },

    #[error("relation matrix must be {m}x{m}")]
    BadMatrixShape { m: usize },

    #[error("relation diagonal is neither all 0 nor all 1")]
    MixedDiagonal,

    #[error("member {index} has ground set size {found}, expected {expected}")]
    GroundMismatch { index: usize, expected: usize, found: usize },

    #[error("member {index} is not a tournament on the off-diagonal pairs")]
    NotTournament { index: usize },

    #[error("operation needs a {expected} family, got {found}")]
    WrongKind { expected: &'static str, found: FamilyKind },

    #[error("family must not be empty")]
    EmptyFamily,

    #[error("member index {index} out of range for a family of {len}")]
    BadIndex { index: usize, len: usize },

    #[error("ground set must have at least {min} elements, got {m}")]
    GroundTooSmall { m: usize, min: usize },

    #[error("family is not separating")]
    NotSeparating,

    #[error("no admissible insertion sequence of length {len}: all {taken} sequences are taken")]
    NoExtensionChoice { len: usize, taken: usize },

    #[error(
        "no hereditarily rigid family of {kappa} relations on {mu} points: \
         mu(mu-1) = {needed} exceeds C(2*{kappa}, {kappa}) = {binomial}"
    )]
    BinomialBound { mu: usize, kappa: usize, needed: u128, binomial: u128 },

    #[error(
        "self-dual middle-level codewords exhausted for ({mu}, {kappa}): \
         need {needed}, only {available} are outside the swap-fixed set"
    )]
    SelfDualCapacity { mu: usize, kappa: usize, needed: u128, available: u128 },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("family JSON: {0}")]
    Json(String),

    #[error("DIMACS: {0}")]
    Dimacs(String),

    #[error("model does not assign variable {0}")]
    MissingVariable(u32),

    #[error("order {} decodes to a cycle {} < {} < {} < {}", order + 1, a + 1, b + 1, c + 1, a + 1)]
    NonTransitive { order: usize, a: usize, b: usize, c: usize },

    #[error("decoded family is not separating; the encoding is inconsistent")]
    DecodedNotSeparating,

    #[error("internal inconsistency: {0}")]
    Internal(String),
}
