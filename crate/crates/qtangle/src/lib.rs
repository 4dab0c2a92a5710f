//! Quandle cocycle invariants of knots and tangles.
//!
//! The crate computes state-sum invariants of oriented knot and tangle
//! diagrams colored by finite quandles, weighted by quandle 2- and
//! 3-cocycles, and uses multiset inclusion of the resulting invariants
//! as an obstruction to embedding tangles (and disjoint unions of
//! tangles) in knots.
//!
//! Modules follow the pipeline: [`algebra`] builds finite quandles,
//! [`cocycles`] builds and verifies cocycles over them, [`diagrams`]
//! constructs combinatorial diagrams, [`colorings`] enumerates quandle
//! colorings, [`invariants`] evaluates state sums into multisets,
//! [`obstruction`] runs inclusion tests and table scans, and
//! [`catalog`] ships the bundled knot and tangle tables.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod cocycles;
pub mod colorings;
pub mod diagrams;
pub mod error;
pub mod invariants;
pub mod obstruction;

pub use error::{Error, Result};
