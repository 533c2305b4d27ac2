//! Covariants of qubit systems under SL(2,C)^k, the local unitary invariants
//! built from them, entanglement measures, and Hilbert series of the invariant
//! algebras.

pub mod catalog;
pub mod error;
pub mod hilbert;
pub mod measures;
pub mod poly;
pub mod random;
pub mod registry;
pub mod transvection;
pub mod unitary;
pub mod verify;

pub use error::{Error, Result};
