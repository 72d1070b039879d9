//! Combinatorics of BT1 group schemes: words, Kraft modules, canonical types,
//! Ekedahl–Oort sequences and the invariants of Fermat curves.

pub mod canonical;
pub mod eo;
pub mod error;
pub mod fermat;
pub mod invariants;
pub mod kraft;
pub mod permdata;
pub mod scalar;
pub mod tables;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use scalar::Count;

/// Arbitrary precision counts.
pub type BigCount = num_bigint::BigUint;
/// Machine word counts.
pub type MachineCount = u64;
