//! Good pairs and good tuples.
//!
//! For a bipartite pair `(A, B)` with measured density `d = d(A -> B)`, two
//! vertices `x, y` of `A` form a *good* pair when
//! `|N⁺(x) ∩ N⁺(y) ∩ B| >= (d² - 10 eps) |B|`. In a regular pair all but a
//! `10 eps` fraction of pairs are good, so any large enough subset of `A`
//! contains one.
//!
//! Higher powers use ordered transitive `k`-tuples `x_1 -> ... -> x_k` with
//! `|∩ N⁺(x_i) ∩ B| >= (d^k - c_k eps) |B|`, `c_k` from [`tuple_slack`].

use super::threshold::{density, power_threshold, rational};
use super::{tuple_slack, ProofError, RegularityParams};
use crate::bitset::{and3_count, BitSet};
use crate::tournament::{BipartitePair, Tournament, VertexSet};

/// A good pair oriented by its internal edge: `x -> y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPair {
    pub x: usize,
    pub y: usize,
    /// `|N⁺(x) ∩ N⁺(y) ∩ B|`.
    pub witness_size: usize,
    /// The integer threshold it was compared against.
    pub min_witness: usize,
}

/// A transitive tuple `vertices[0] -> vertices[1] -> ...` (all pairs forward).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodTuple {
    pub vertices: Vec<usize>,
    pub witness_size: usize,
    pub min_witness: usize,
}

impl From<GoodPair> for GoodTuple {
    fn from(p: GoodPair) -> Self {
        GoodTuple {
            vertices: vec![p.x, p.y],
            witness_size: p.witness_size,
            min_witness: p.min_witness,
        }
    }
}

/// `ceil((d^k - c_k eps) |B|)` for the pair's measured `A -> B` density.
pub fn min_witness(pair: &BipartitePair, k: usize, params: &RegularityParams) -> usize {
    let d = density(pair.edges_ab(), pair.size_a(), pair.size_b());
    power_threshold(&d, k, tuple_slack(k), &rational(params.eps), pair.size_b())
}

pub fn is_good_pair(
    t: &Tournament,
    pair: &BipartitePair,
    x: usize,
    y: usize,
    params: &RegularityParams,
) -> Result<bool, ProofError> {
    for v in [x, y] {
        if !pair.a.contains(v) {
            return Err(ProofError::InvalidVertex(v));
        }
    }
    if x == y {
        return Err(ProofError::InvalidVertex(x));
    }
    let w = and3_count(t.out_row(x), t.out_row(y), pair.b.words());
    Ok(w >= min_witness(pair, 2, params))
}

/// First good pair of `f` in increasing `(min, max)` label order, oriented by
/// its tournament edge. `None` when no pair of `f` is good.
pub fn find_good_pair(
    t: &Tournament,
    pair: &BipartitePair,
    f: &VertexSet,
    params: &RegularityParams,
) -> Result<Option<GoodPair>, ProofError> {
    check_inside(f, &pair.a)?;
    let threshold = min_witness(pair, 2, params);
    Ok(scan_pairs(t, pair, f, threshold))
}

fn scan_pairs(t: &Tournament, pair: &BipartitePair, f: &VertexSet, threshold: usize) -> Option<GoodPair> {
    let members = f.to_vec();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            let w = and3_count(t.out_row(a), t.out_row(b), pair.b.words());
            if w >= threshold {
                let (x, y) = if t.has_edge(a, b) { (a, b) } else { (b, a) };
                return Some(GoodPair {
                    x,
                    y,
                    witness_size: w,
                    min_witness: threshold,
                });
            }
        }
    }
    None
}

fn check_inside(f: &VertexSet, side: &VertexSet) -> Result<(), ProofError> {
    if let Some(v) = f.difference(side).first() {
        return Err(ProofError::InvalidVertex(v));
    }
    Ok(())
}

/// Node cap for the tuple search when `k >= 3`.
const TUPLE_SEARCH_NODES: usize = 200_000;

/// First good transitive `k`-tuple inside `f`. For `k = 2` this is exactly
/// [`find_good_pair`]; for larger `k` a depth-first search extends
/// `x_1 -> x_2 -> ...` in label order, pruning as soon as the running common
/// out-neighbourhood in `B` drops below the threshold.
pub fn find_good_tuple(
    t: &Tournament,
    pair: &BipartitePair,
    f: &VertexSet,
    k: usize,
    params: &RegularityParams,
) -> Result<Option<GoodTuple>, ProofError> {
    check_inside(f, &pair.a)?;
    let threshold = min_witness(pair, k, params);
    if k == 2 {
        return Ok(scan_pairs(t, pair, f, threshold).map(GoodTuple::from));
    }
    let mut budget = TUPLE_SEARCH_NODES;
    let mut chosen = Vec::with_capacity(k);
    Ok(extend_tuple(
        t,
        f,
        &pair.b,
        k,
        threshold,
        &mut chosen,
        &mut budget,
    ))
}

fn extend_tuple(
    t: &Tournament,
    cand: &BitSet,
    common_b: &BitSet,
    k: usize,
    threshold: usize,
    chosen: &mut Vec<usize>,
    budget: &mut usize,
) -> Option<GoodTuple> {
    for v in cand.iter() {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let mut b_next = common_b.clone();
        b_next.intersect_with(t.out_row(v));
        let w = b_next.count();
        if w < threshold {
            continue;
        }
        chosen.push(v);
        if chosen.len() == k {
            return Some(GoodTuple {
                vertices: chosen.clone(),
                witness_size: w,
                min_witness: threshold,
            });
        }
        let mut c_next = cand.clone();
        c_next.intersect_with(t.out_row(v));
        if let Some(found) = extend_tuple(t, &c_next, &b_next, k, threshold, chosen, budget) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}
