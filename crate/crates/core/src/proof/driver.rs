//! The recursive finder.
//!
//! At every node of the recursion (a subtournament):
//!
//! 1. small nodes (`n <= base_case`) are solved exactly;
//! 2. otherwise the vertices are split into `parts` random near-equal parts
//!    and every pair of parts is probed;
//! 3. if some regular pair has balanced density, chain good pairs across it
//!    (route `claim1`);
//! 4. otherwise build the cluster digraph of near-complete regular pairs and
//!    ask the ordering lemma for a path with `ceil(delta * parts / 2)` arcs;
//!    a path means concatenating recursive solutions part by part along it
//!    (route `claim2`), an ordering means splitting the parts into a left and
//!    right half, dropping weak left vertices, and joining a left solution
//!    with a right solution inside the common out-neighbourhood of its tail
//!    (route `claim3`).
//!
//! The route result is compared with the greedy baseline and the longer
//! verified witness wins. Every join is re-verified and cut back to its
//! longest valid prefix, so a misleading probe costs length, never
//! correctness.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::chain::{chain_power_path, Side};
use super::cluster::{build_cluster_digraph, ClusterDigraph};
use super::ordering::{order_or_long_path, OrderingCertificate, PathOrOrdering};
use super::threshold::{ceil_times, rational};
use super::RegularityParams;
use crate::rng::{derive_seed, stream_rng};
use crate::solver::{greedy_power_path, hamiltonian_path, longest_power_path_exact, PowerPath, SolveBudget};
use crate::tournament::{BipartitePair, Tournament, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FinderConfig {
    pub params: RegularityParams,
    pub seed: u64,
    /// Nodes with at most this many vertices are solved exactly.
    pub base_case: usize,
    /// Deeper nodes fall back to greedy.
    pub max_depth: usize,
    pub exact_budget: SolveBudget,
}

impl Default for FinderConfig {
    fn default() -> Self {
        FinderConfig {
            params: RegularityParams::default(),
            seed: 0,
            base_case: 16,
            max_depth: 8,
            exact_budget: SolveBudget::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Claim1,
    Claim2,
    Claim3,
    Base,
    Greedy,
}

/// One line of the route trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub node: usize,
    pub route: Route,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinderReport {
    pub path: PowerPath,
    /// Records in completion order (children before their parent).
    pub trace: Vec<TraceRecord>,
}

impl FinderReport {
    pub fn trace_jsonl(&self) -> String {
        self.trace
            .iter()
            .map(|r| serde_json::to_string(r).expect("plain record") + "\n")
            .collect()
    }
}

/// A finder for a vertex subset of the host: must return a verified power
/// path using only vertices of the subset.
pub type Subfinder<'a> = dyn FnMut(&VertexSet) -> PowerPath + 'a;

/// Restrict `set` to the common out-neighbourhood of the last `k` vertices of
/// `path`.
fn dominated_by_tail(t: &Tournament, path: &PowerPath, set: &VertexSet) -> VertexSet {
    let mut s = set.clone();
    for &v in path.tail() {
        s.intersect_with(t.out_row(v));
    }
    s
}

fn join(t: &Tournament, left: &PowerPath, right: &PowerPath) -> PowerPath {
    let mut v = left.vertices.clone();
    v.extend_from_slice(&right.vertices);
    PowerPath::new(left.k, v).longest_valid_prefix(t)
}

/// Outcome of concatenating along a cluster path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concatenation {
    pub path: PowerPath,
    /// Positions (in the cluster path) dropped because their trimmed part
    /// became empty; everything before such a position is dropped too.
    pub skipped: Vec<usize>,
    /// Position at which a join found no candidates, if any.
    pub join_failed_at: Option<usize>,
}

/// Walk a directed path of parts. Parts are trimmed right to left, keeping
/// the vertices that send at least `(1 - delta - eps)` of the next trimmed
/// part; then each trimmed part is solved by `subfinder` inside the common
/// out-neighbourhood of the current witness's tail and appended.
pub fn concatenate_along_cluster_path(
    t: &Tournament,
    cd: &ClusterDigraph,
    cluster_path: &[usize],
    k: usize,
    params: &RegularityParams,
    subfinder: &mut Subfinder<'_>,
) -> Concatenation {
    let frac = rational(1.0 - params.delta - params.eps);
    let m = cluster_path.len();
    let mut trimmed: Vec<VertexSet> = vec![t.empty_set(); m];
    let mut skipped = Vec::new();
    let mut start = 0;
    for pos in (0..m).rev() {
        let part = &cd.parts[cluster_path[pos]];
        if pos + 1 == m {
            trimmed[pos] = part.clone();
            continue;
        }
        let next = &trimmed[pos + 1];
        let need = ceil_times(&frac, next.count());
        trimmed[pos] = t.vertex_set(part.iter().filter(|&x| next.count_and(t.out_row(x)) >= need));
        if trimmed[pos].is_empty() {
            skipped.extend(0..=pos);
            start = pos + 1;
            break;
        }
    }
    skipped.sort_unstable();

    let mut acc = PowerPath::empty(k);
    let mut join_failed_at = None;
    for (pos, set) in trimmed.iter().enumerate().skip(start) {
        let space = dominated_by_tail(t, &acc, set);
        if space.is_empty() {
            join_failed_at = Some(pos);
            break;
        }
        let piece = subfinder(&space);
        let joined = join(t, &acc, &piece);
        let complete = joined.len() == acc.len() + piece.len();
        acc = joined;
        if !complete {
            join_failed_at = Some(pos);
            break;
        }
    }
    Concatenation {
        path: acc,
        skipped,
        join_failed_at,
    }
}

/// Count threshold `2 sqrt(eps) parts` for weak vertices, as an integer
/// (values within `1e-9` of an integer round down to it).
pub fn weak_count_threshold(eps: f64, parts: usize) -> usize {
    let x = 2.0 * eps.sqrt() * parts as f64;
    ((x - 1e-9).ceil() as usize).max(1)
}

/// Left vertices that are weak: at least `weak_count_threshold` right parts
/// are joined to their part by a cluster arc, yet receive fewer than
/// `(1 - 2 delta) |part|` out-edges from the vertex.
pub fn weak_vertices(
    t: &Tournament,
    cd: &ClusterDigraph,
    left: &[usize],
    right: &[usize],
    params: &RegularityParams,
) -> VertexSet {
    let frac = rational(1.0 - 2.0 * params.delta);
    let thr = weak_count_threshold(params.eps, cd.parts.len());
    let mut weak = t.empty_set();
    for &j in left {
        let targets: Vec<(usize, usize)> = right
            .iter()
            .filter(|&&r| cd.has_arc(j, r))
            .map(|&r| (r, ceil_times(&frac, cd.parts[r].count())))
            .collect();
        if targets.len() < thr {
            continue;
        }
        for x in cd.parts[j].iter() {
            let low = targets
                .iter()
                .filter(|&&(r, need)| cd.parts[r].count_and(t.out_row(x)) < need)
                .count();
            if low >= thr {
                weak.insert(x);
            }
        }
    }
    weak
}

/// Split the parts by `order` into a left and a right half, solve the left
/// half without its weak vertices, then solve the right half inside the
/// common out-neighbourhood of the left witness's tail and join. If the join
/// does not verify, the longer half is returned.
pub fn split_and_join(
    t: &Tournament,
    cd: &ClusterDigraph,
    order: &OrderingCertificate,
    k: usize,
    params: &RegularityParams,
    subfinder: &mut Subfinder<'_>,
) -> PowerPath {
    let half = order.order.len() / 2;
    let (left, right) = order.order.split_at(half);
    let union = |ids: &[usize]| {
        let mut s = t.empty_set();
        for &i in ids {
            s.union_with(cd.parts[i].words());
        }
        s
    };
    let mut l_set = union(left);
    l_set.difference_with(weak_vertices(t, cd, left, right, params).words());
    let h_l = if l_set.is_empty() {
        PowerPath::empty(k)
    } else {
        subfinder(&l_set)
    };
    let r_set = dominated_by_tail(t, &h_l, &union(right));
    let h_r = if r_set.is_empty() {
        PowerPath::empty(k)
    } else {
        subfinder(&r_set)
    };
    let joined = join(t, &h_l, &h_r);
    if joined.len() == h_l.len() + h_r.len() {
        joined
    } else if h_l.len() >= h_r.len() {
        h_l
    } else {
        h_r
    }
}

/// Random near-equal partition of `0..n` into `parts` sets.
pub fn equipartition(t: &Tournament, parts: usize, seed: u64) -> Vec<VertexSet> {
    let n = t.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut stream_rng(seed, "partition"));
    (0..parts)
        .map(|p| t.vertex_set(order[p * n / parts..(p + 1) * n / parts].iter().copied()))
        .collect()
}

struct Finder<'c> {
    cfg: &'c FinderConfig,
    k: usize,
    next_node: usize,
    trace: Vec<TraceRecord>,
}

impl Finder<'_> {
    fn record(&mut self, node: usize, route: Route, len: usize) {
        self.trace.push(TraceRecord { node, route, len });
    }

    fn solve_subset(&mut self, t: &Tournament, s: &VertexSet, depth: usize) -> PowerPath {
        if s.is_empty() {
            return PowerPath::empty(self.k);
        }
        let (sub, map) = t.induced(s).expect("nonempty subset");
        let p = self.solve(&sub, depth);
        PowerPath::new(self.k, map.lift_all(&p.vertices))
    }

    fn solve(&mut self, t: &Tournament, depth: usize) -> PowerPath {
        let node = self.next_node;
        self.next_node += 1;
        let cfg = self.cfg;
        let params = &cfg.params;
        let k = self.k;
        let n = t.n();

        if n <= cfg.base_case {
            let p = match longest_power_path_exact(t, k, cfg.exact_budget) {
                Ok(p) => p,
                Err(e) => e.best,
            };
            self.record(node, Route::Base, p.len());
            return p;
        }
        let node_seed = derive_seed(cfg.seed, &format!("node/{node}"));
        let greedy = greedy_power_path(t, k, node_seed);
        let part_size = n / params.parts;
        if depth >= cfg.max_depth || (part_size as f64) * params.delta < 2.0 {
            self.record(node, Route::Greedy, greedy.len());
            return greedy;
        }

        let parts = equipartition(t, params.parts, node_seed);
        let cd = build_cluster_digraph(t, &parts, params, node_seed);
        let (route, found) = if let Some((i, j)) = cd.most_balanced_mid_pair() {
            let pair = BipartitePair::new(t, parts[i].clone(), parts[j].clone()).expect("disjoint parts");
            (Route::Claim1, chain_power_path(t, &pair, k, params, Side::A).path)
        } else {
            let need = ((params.delta * params.parts as f64 / 2.0).ceil() as usize).max(1);
            match order_or_long_path(&cd.graph(), need) {
                PathOrOrdering::Path(p) => {
                    let c = concatenate_along_cluster_path(t, &cd, &p.vertices, k, params, &mut |s| {
                        self.solve_subset(t, s, depth + 1)
                    });
                    (Route::Claim2, c.path)
                }
                PathOrOrdering::Ordering(cert) => {
                    let p = split_and_join(t, &cd, &cert, k, params, &mut |s| {
                        self.solve_subset(t, s, depth + 1)
                    });
                    (Route::Claim3, p)
                }
            }
        };
        self.record(node, route, found.len());
        if greedy.len() > found.len() {
            self.record(node, Route::Greedy, greedy.len());
            greedy
        } else {
            found
        }
    }
}

/// Long `k`-th power of a path. `k = 1` is a Hamiltonian path by insertion;
/// `k >= 2` runs the recursive finder.
pub fn find_kth_power_path(t: &Tournament, k: usize, cfg: &FinderConfig) -> FinderReport {
    assert!(k >= 1, "power order must be positive");
    if k == 1 {
        let path = hamiltonian_path(t);
        return FinderReport {
            trace: vec![TraceRecord {
                node: 0,
                route: Route::Greedy,
                len: path.len(),
            }],
            path,
        };
    }
    let mut f = Finder {
        cfg,
        k,
        next_node: 0,
        trace: Vec::new(),
    };
    let path = f.solve(t, 0);
    if let Err(e) = path.verify(t) {
        panic!("finder produced an invalid witness: {e}");
    }
    FinderReport {
        path,
        trace: f.trace,
    }
}

/// Long square of a path.
pub fn find_square_path(t: &Tournament, cfg: &FinderConfig) -> FinderReport {
    find_kth_power_path(t, 2, cfg)
}

/// A subfinder that induces the subset and solves it exactly.
pub fn exact_subfinder(t: &Tournament, k: usize, budget: SolveBudget) -> impl FnMut(&VertexSet) -> PowerPath + '_ {
    move |s: &VertexSet| {
        let (sub, map) = t.induced(s).expect("nonempty subset");
        let p = match longest_power_path_exact(&sub, k, budget) {
            Ok(p) => p,
            Err(e) => e.best,
        };
        PowerPath::new(k, map.lift_all(&p.vertices))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consecutive_parts(t: &Tournament, size: usize) -> Vec<VertexSet> {
        (0..t.n() / size).map(|p| t.vertex_set(p * size..(p + 1) * size)).collect()
    }

    #[test]
    fn transitive_concatenation_is_complete() {
        let t = Tournament::transitive(30).unwrap();
        let p = RegularityParams::default();
        let cd = build_cluster_digraph(&t, &consecutive_parts(&t, 10), &p, 0);
        let mut sub = exact_subfinder(&t, 2, SolveBudget::default());
        let c = concatenate_along_cluster_path(&t, &cd, &[0, 1, 2], 2, &p, &mut sub);
        assert_eq!(c.path.vertices, (0..30).collect::<Vec<_>>());
        assert!(c.skipped.is_empty() && c.join_failed_at.is_none());
    }

    #[test]
    fn single_part_is_the_subfinder_output() {
        let t = Tournament::random(36, 2).unwrap();
        let p = RegularityParams::default();
        let cd = build_cluster_digraph(&t, &consecutive_parts(&t, 12), &p, 0);
        let mut sub = exact_subfinder(&t, 2, SolveBudget::default());
        let direct = sub(&cd.parts[1]);
        let c = concatenate_along_cluster_path(&t, &cd, &[1], 2, &p, &mut sub);
        assert_eq!(c.path, direct);
    }

    #[test]
    fn blown_up_triangle_concatenation() {
        let c3 = Tournament::rotational(3, &[1].into()).unwrap();
        let t = c3.blow_up(20).unwrap();
        let p = RegularityParams::default();
        let cd = build_cluster_digraph(&t, &consecutive_parts(&t, 20), &p, 0);
        let mut sub = exact_subfinder(&t, 2, SolveBudget::default());
        let c = concatenate_along_cluster_path(&t, &cd, &[0, 1], 2, &p, &mut sub);
        assert!(c.path.is_valid(&t));
        assert!(c.path.len() >= 40);
    }

    #[test]
    fn empty_trimmed_part_is_skipped() {
        // Parts 0 -> 1 claimed by the caller, but part 0 actually loses to 1.
        let t = Tournament::transitive(20).unwrap().reversed();
        let p = RegularityParams::default();
        let cd = build_cluster_digraph(&t, &consecutive_parts(&t, 10), &p, 0);
        let mut sub = exact_subfinder(&t, 2, SolveBudget::default());
        let c = concatenate_along_cluster_path(&t, &cd, &[0, 1], 2, &p, &mut sub);
        assert_eq!(c.skipped, vec![0]);
        assert_eq!(c.path.len(), 10);
    }

    #[test]
    fn split_and_join_on_transitive_parts() {
        let t = Tournament::transitive(40).unwrap();
        let p = RegularityParams::default();
        let cd = build_cluster_digraph(&t, &consecutive_parts(&t, 10), &p, 0);
        let PathOrOrdering::Ordering(cert) = order_or_long_path(&cd.graph(), 4) else {
            panic!("4 parts cannot hold a path with 4 arcs");
        };
        assert_eq!(cert.order, vec![0, 1, 2, 3]);
        let mut sub = exact_subfinder(&t, 2, SolveBudget::states(50_000_000));
        let h = split_and_join(&t, &cd, &cert, 2, &p, &mut sub);
        assert_eq!(h.vertices, (0..40).collect::<Vec<_>>());
    }

    #[test]
    fn weak_threshold_rounding() {
        // 2 * sqrt(0.01) * 10 = 2 (up to float noise) must give 2, not 3.
        assert_eq!(weak_count_threshold(0.01, 10), 2);
        assert_eq!(weak_count_threshold(0.04, 8), 4);
        assert_eq!(weak_count_threshold(1e-12, 2), 1);
    }

    #[test]
    fn weak_vertices_are_found() {
        // Left part {0..10} -> right parts {10..20}, {20..30} fully, except
        // vertex 3 which loses to everything on the right.
        let t = Tournament::from_fn(30, |i, j| !(i == 3 && j >= 10)).unwrap();
        let p = RegularityParams { eps: 0.01, delta: 0.1, parts: 3, samples: 4 };
        let cd = ClusterDigraph {
            parts: consecutive_parts(&t, 10),
            arcs: [(0, 1), (0, 2), (1, 2)].into(),
            mid_pairs: Vec::new(),
            probes: Vec::new(),
        };
        let weak = weak_vertices(&t, &cd, &[0], &[1, 2], &p);
        assert_eq!(weak.to_vec(), vec![3]);
    }

    #[test]
    fn driver_basics() {
        let cfg = FinderConfig::default();
        let one = Tournament::transitive(1).unwrap();
        assert_eq!(find_square_path(&one, &cfg).path.len(), 1);
        let t = Tournament::transitive(200).unwrap();
        let r = find_square_path(&t, &cfg);
        assert_eq!(r.path.len(), 200);
        let t = Tournament::transitive(100).unwrap();
        assert_eq!(find_kth_power_path(&t, 5, &cfg).path.len(), 100);
    }

    #[test]
    fn driver_is_deterministic() {
        let t = Tournament::random(300, 4).unwrap();
        let cfg = FinderConfig { seed: 11, ..Default::default() };
        let a = find_square_path(&t, &cfg);
        let b = find_square_path(&t, &cfg);
        assert_eq!(a, b);
        assert!(a.path.is_valid(&t));
    }
}
