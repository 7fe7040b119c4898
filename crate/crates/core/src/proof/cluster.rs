//! The cluster digraph on the parts of a partition.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::ordering::OrientedGraph;
use super::regularity::sampled_regular;
use super::threshold::{ceil_times, rational};
use super::RegularityParams;
use crate::rng::derive_seed;
use crate::tournament::{BipartitePair, Tournament, VertexSet};

/// Probe outcome for one unordered pair of parts `(i, j)`, `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairProbe {
    pub i: usize,
    pub j: usize,
    pub edges_ij: u64,
    pub cross: u64,
    pub regular: bool,
}

impl PairProbe {
    pub fn density_ij(&self) -> f64 {
        self.edges_ij as f64 / self.cross as f64
    }
}

#[derive(Debug, Clone)]
pub struct ClusterDigraph {
    pub parts: Vec<VertexSet>,
    /// `(i, j)` present iff the pair probed regular and `d(i -> j) >= 1 - delta`.
    pub arcs: BTreeSet<(usize, usize)>,
    /// Regular pairs with `delta <= d <= 1 - delta`, as `(i, j)` with `i < j`.
    pub mid_pairs: Vec<(usize, usize)>,
    pub probes: Vec<PairProbe>,
}

impl ClusterDigraph {
    pub fn graph(&self) -> OrientedGraph {
        OrientedGraph::from_arcs(self.parts.len(), self.arcs.iter().copied())
            .expect("at most one arc per pair")
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.arcs.contains(&(i, j))
    }

    pub fn probe(&self, i: usize, j: usize) -> &PairProbe {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.probes
            .iter()
            .find(|p| p.i == a && p.j == b)
            .expect("every pair is probed")
    }

    /// The mid-density pair whose density is closest to 1/2 (ties: smallest
    /// indices).
    pub fn most_balanced_mid_pair(&self) -> Option<(usize, usize)> {
        // Distance from 1/2 is |2e - cross| / cross; compare cross-multiplied.
        let off = |(i, j): (usize, usize)| {
            let p = self.probe(i, j);
            ((2 * p.edges_ij).abs_diff(p.cross) as u128, p.cross as u128)
        };
        self.mid_pairs.iter().copied().min_by(|&x, &y| {
            let ((nx, dx), (ny, dy)) = (off(x), off(y));
            (nx * dy).cmp(&(ny * dx)).then(x.cmp(&y))
        })
    }
}

/// Probe every pair of parts (in parallel; results are collected in pair
/// order, so the outcome is independent of scheduling).
pub fn build_cluster_digraph(
    t: &Tournament,
    parts: &[VertexSet],
    params: &RegularityParams,
    seed: u64,
) -> ClusterDigraph {
    let l = parts.len();
    let pairs: Vec<(usize, usize)> = (0..l).flat_map(|i| (i + 1..l).map(move |j| (i, j))).collect();
    let hi = rational(1.0 - params.delta);
    let lo = rational(params.delta);
    let probes: Vec<PairProbe> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let pair = BipartitePair::new(t, parts[i].clone(), parts[j].clone())
                .expect("parts are disjoint and nonempty");
            let verdict = sampled_regular(t, &pair, params, derive_seed(seed, &format!("probe/{i}/{j}")));
            PairProbe {
                i,
                j,
                edges_ij: pair.edges_ab(),
                cross: pair.cross_pairs(),
                regular: verdict.regular,
            }
        })
        .collect();
    let mut arcs = BTreeSet::new();
    let mut mid_pairs = Vec::new();
    for p in &probes {
        if !p.regular {
            continue;
        }
        let cross = p.cross as usize;
        let need_hi = ceil_times(&hi, cross) as u64;
        let need_lo = ceil_times(&lo, cross) as u64;
        let e_ji = p.cross - p.edges_ij;
        if p.edges_ij >= need_hi {
            arcs.insert((p.i, p.j));
        } else if e_ji >= need_hi {
            arcs.insert((p.j, p.i));
        } else if p.edges_ij >= need_lo && e_ji >= need_lo {
            mid_pairs.push((p.i, p.j));
        }
    }
    ClusterDigraph {
        parts: parts.to_vec(),
        arcs,
        mid_pairs,
        probes,
    }
}
