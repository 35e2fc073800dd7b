//! Exact arithmetic for Hecke pairs `(G, Γ)`: double-coset decompositions,
//! Hecke-algebra convolution, the successor graph on the double-coset basis,
//! co-hereditary closures and certified norm bounds.
//!
//! Every pair is reached through a [`group::GroupOracle`]; the shipped ones
//! live in [`catalog`].

pub mod algebra;
pub mod catalog;
pub mod certify;
pub mod commutator;
pub mod error;
pub mod graph;
pub mod group;
pub mod hnf;
pub mod linalg;
pub mod rational;
pub mod rounding;

pub use error::{HeckeError, Result};
pub use group::{DoubleCoset, GroupOracle, HeckePair};
