use rand::Rng;

use crate::rng::stream_rng;
use crate::solver::PowerPath;
use crate::tournament::Tournament;

/// Extend greedily: the next vertex must be an unused common out-neighbour of
/// the last `min(k, len)` vertices; among candidates pick the one with the
/// most out-neighbours still unused, ties broken uniformly from `seed`.
pub fn greedy_power_path(t: &Tournament, k: usize, seed: u64) -> PowerPath {
    assert!(k >= 1, "power order must be positive");
    let mut rng = stream_rng(seed, "greedy");
    let mut unused = t.all_vertices();
    let mut path = PowerPath::empty(k);
    loop {
        let mut cand = unused.clone();
        for &v in path.tail() {
            cand.intersect_with(t.out_row(v));
        }
        let mut best: Option<usize> = None;
        let mut best_score = 0usize;
        let mut ties = 0u32;
        for c in cand.iter() {
            let score = unused.count_and(t.out_row(c));
            match best {
                Some(_) if score < best_score => {}
                Some(_) if score == best_score => {
                    ties += 1;
                    if rng.gen_range(0..ties) == 0 {
                        best = Some(c);
                    }
                }
                _ => {
                    best = Some(c);
                    best_score = score;
                    ties = 1;
                }
            }
        }
        match best {
            Some(c) => {
                unused.remove(c);
                path.vertices.push(c);
            }
            None => break,
        }
    }
    debug_assert!(path.is_valid(t));
    path
}

/// A Hamiltonian path (the `k = 1` case always spans every vertex), built by
/// binary insertion: vertices are inserted one at a time into the current
/// path between a consecutive pair `a -> v -> b`.
pub fn hamiltonian_path(t: &Tournament) -> PowerPath {
    let mut order: Vec<usize> = Vec::with_capacity(t.n());
    for v in 0..t.n() {
        // Invariant: order[lo-1] -> v (or lo = 0) and v -> order[hi] (or hi = len).
        let (mut lo, mut hi) = (0usize, order.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if t.has_edge(order[mid], v) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        order.insert(lo, v);
    }
    PowerPath::new(1, order)
}
