//! Rainbow bases of matroids whose ground set splits into disjoint bases.
//!
//! Given a matroid `M` whose ground set is the union of `k` pairwise
//! disjoint bases and a partition `P` of the elements into color classes,
//! a *rainbow basis* is a basis using at most one element per class. This
//! crate implements:
//!
//! * matroid primitives (graphic, uniform, partition, direct sums, minors)
//!   behind one rank-oracle interface ([`matroid`]);
//! * matroid union via exchange-graph augmentation, decompositions into `k`
//!   disjoint bases, and tight-set search ([`union`]);
//! * rainbow bases of two-base matroids that cover at least half of a marked
//!   set, and logarithmic covers by rainbow bases ([`rainbow`]);
//! * constant-size covers by rainbow bases for `k >= 3` ([`cover`]);
//! * the gadget reductions showing the associated decision problems are
//!   NP-complete, with certificate translations in both directions
//!   ([`reductions`]);
//! * small exact solvers used to cross-check the reductions ([`solver`]);
//! * instance and certificate file formats plus a command line interface
//!   ([`fileio`], [`cli`]).
//!
//! The `examples/` directory of the crate is the guided tour: each runnable
//! example demonstrates one capability end to end.

pub mod cli;
pub mod cover;
pub mod error;
pub mod fileio;
pub mod graph;
pub mod instances;
pub mod matroid;
pub mod partition;
pub mod rainbow;
pub mod reductions;
pub mod solver;
pub mod union;
pub mod verify;

pub use error::{Error, Result};
