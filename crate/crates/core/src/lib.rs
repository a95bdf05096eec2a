//! Finite duality for semilattices with operators.

pub mod bitset;
pub mod dot;
pub mod duality;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod json;
pub mod multirel;
pub mod order;
pub mod relations;
pub mod report;
pub mod roundtrip;
pub mod semilattice;
pub mod sspace;
pub mod workbench;

pub use bitset::BitSet;
pub use error::{Error, Result};
