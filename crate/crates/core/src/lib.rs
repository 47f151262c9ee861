//! Exact verification and search toolkit for s-almost cross-t-intersecting
//! families of k-subsets of [n].
//!
//! A pair of families is cross-t-intersecting when every member of one meets
//! every member of the other in at least t elements, and s-almost
//! cross-t-intersecting when each member of either family is t-disjoint with
//! at most s members of the other. The crate provides the named extremal
//! constructions, all definitional predicates, t-covering numbers, exact
//! big-integer bound functions, executable proof procedures, and brute-force
//! search with independent oracles.

pub mod bounds;
pub mod certify;
pub mod constructions;
pub mod corpus;
pub mod covers;
pub mod family;
pub mod predicates;
pub mod search;

pub use family::{
    binomial, enumerate_k_subsets, intersection_size, BigCount, Error, Params, Result, SetFamily,
    Subset,
};
pub use predicates::{FamilyPair, Verdict};
