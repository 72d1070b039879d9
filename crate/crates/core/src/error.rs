use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty word")]
    EmptyWord,
    #[error("empty multiset")]
    EmptyMultiset,
    #[error("word {0} uses only one letter")]
    NotMixed(String),
    #[error("word {0} is not primitive")]
    NotPrimitive(String),
    #[error("multiset contains a non-primitive word ({0})")]
    NotPrimitiveMultiset(String),
    #[error("element {0} is not in the set")]
    UnknownElement(u64),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("collected subspaces are not totally ordered")]
    ChainNotTotal,
    #[error("invalid canonical type: {0}")]
    InvalidCanonicalType(String),
    #[error("canonical type is not self-dual")]
    NotSelfDual,
    #[error("invalid elementary sequence: {0}")]
    InvalidSequence(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconsistent multiplicities: {0}")]
    InconsistentMultiplicities(String),
    #[error("p={p} divides d={d}")]
    NotCoprime { p: u64, d: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("formula requires odd p; use the p = 2 routines")]
    UseP2Module,
    #[error("d={0} gives a rational curve")]
    RationalCurve(u64),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
