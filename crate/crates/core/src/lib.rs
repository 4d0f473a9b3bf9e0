//! Finite simplicial and bisimplicial sets, with bounded decision procedures for
//! lifting properties, cofinality and covariant equivalence, and constructions for
//! simplicial replacement and quasi-localization.

pub mod acceptance;
pub mod bisimplicial;
pub mod delta;
pub mod error;
pub mod homotopy;
pub mod lifting;
pub mod localization;
pub mod sset;
pub mod ssx;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::{Outcome, Verdict, Witness};
