//! Powers of directed paths in tournaments.
//!
//! * [`tournament`]: row-bitset tournaments, generators, densities, `.trn` I/O.
//! * [`solver`]: the witness verifier, an exact memoized search and a greedy
//!   baseline.
//! * [`proof`]: constructive finders built from the ordering lemma, good
//!   pairs, edge chains in dense-but-balanced pairs, and cluster-digraph
//!   recursion.
//! * [`extremal`]: exhaustive and annealed search for tournaments whose
//!   longest square path is short.
//! * [`cli`]: the `ppath` command line.

pub mod bitset;
pub mod cli;
pub mod extremal;
pub mod proof;
pub mod rng;
pub mod solver;
pub mod tournament;
pub mod trn;

pub use solver::{PowerPath, SolveBudget};
pub use tournament::{BipartitePair, Tournament, VertexSet};
