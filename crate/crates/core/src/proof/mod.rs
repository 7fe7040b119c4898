//! Constructive machinery for long powers of paths.
//!
//! The pieces mirror a density-increment style argument:
//!
//! * [`ordering`]: an oriented graph either has a path with `k` edges or an
//!   ordering in which every vertex has fewer than `k` in-neighbours later on.
//! * [`good_pair`]: pairs (and transitive `k`-tuples) on one side of a
//!   bipartite pair whose common out-neighbourhood on the other side is about
//!   as large as the density predicts.
//! * [`chain`]: alternate good pairs between the two sides of a
//!   balanced-density pair and flatten them into a square of a path.
//! * [`regularity`]: a sampling probe standing in for regularity of a pair.
//! * [`cluster`]: the digraph on partition parts with an arc for every
//!   near-complete regular pair.
//! * [`driver`]: the recursive finder combining all of the above, with every
//!   result re-verified.

pub mod chain;
pub mod cluster;
pub mod driver;
pub mod good_pair;
pub mod ordering;
pub mod regularity;
pub mod threshold;

pub use chain::{chain_power_path, chain_square_path, Chain, Side};
pub use cluster::{build_cluster_digraph, ClusterDigraph};
pub use driver::{
    concatenate_along_cluster_path, exact_subfinder, find_kth_power_path, find_square_path, split_and_join,
    Concatenation, FinderConfig, FinderReport, Route, TraceRecord,
};
pub use good_pair::{find_good_pair, find_good_tuple, is_good_pair, min_witness, GoodPair, GoodTuple};
pub use ordering::{order_or_long_path, OrderingCertificate, OrientedGraph, PathOrOrdering};
pub use regularity::{sampled_regular, RegularityVerdict};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("vertex {0} is not on the expected side of the pair")]
    InvalidVertex(usize),
    #[error("arcs ({0},{1}) and ({1},{0}) both present")]
    NotOriented(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// Tolerances for the regularity probe and the density thresholds.
///
/// `eps` is the regularity tolerance, `delta` the density margin separating
/// "balanced" from "near-complete" pairs, `parts` the number of parts of the
/// equipartition and `samples` the number of sub-pairs drawn per probe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegularityParams {
    pub eps: f64,
    pub delta: f64,
    pub parts: usize,
    pub samples: usize,
}

impl Default for RegularityParams {
    fn default() -> Self {
        RegularityParams {
            eps: 0.05,
            delta: 0.1,
            parts: 8,
            samples: 16,
        }
    }
}

impl RegularityParams {
    pub fn validate(&self) -> Result<(), ProofError> {
        let bad = |m: &str| Err(ProofError::InvalidParams(m.to_string()));
        if !(self.eps > 0.0 && self.eps < self.delta && self.delta <= 0.5) {
            return bad("need 0 < eps < delta <= 1/2");
        }
        if self.parts < 2 {
            return bad("need at least 2 parts");
        }
        if self.samples == 0 {
            return bad("need at least 1 sample");
        }
        Ok(())
    }
}

/// Slack constant in the good-tuple threshold `d^k - c * eps`:
/// `10 * max(k - 1, 1)`, which is the familiar `10` for pairs.
pub fn tuple_slack(k: usize) -> usize {
    10 * k.saturating_sub(1).max(1)
}
