//! Edge chains across a balanced-density pair.
//!
//! Starting on one side, repeatedly pick a good pair (tuple, for higher
//! powers) `e_{i+1}` on the opposite side inside the common out-neighbourhood
//! of `e_i`, avoiding every vertex used so far. Each block is internally
//! transitive and fully dominated by the previous block, so the flattened
//! sequence `e_1 e_2 e_3 ...` is a `k`-th power of a path.
//!
//! The chain runs until no good block exists in the candidate set. The step at
//! which the candidate set first drops below the `(delta² / 4) |side|` floor
//! (where the existence guarantee for good pairs stops applying) is recorded
//! but does not stop the chain.

use super::good_pair::find_good_tuple;
use super::threshold::{ceil_times, rational};
use super::RegularityParams;
use crate::solver::PowerPath;
use crate::tournament::{BipartitePair, Tournament};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// The blocks picked by the chain and the verified flattened witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub blocks: Vec<Vec<usize>>,
    pub sides: Vec<Side>,
    pub path: PowerPath,
    /// First step whose candidate set was below the good-pair floor.
    pub floor_step: Option<usize>,
}

/// Chain transitive `k`-blocks alternately from the two sides of `pair`.
pub fn chain_power_path(
    t: &Tournament,
    pair: &BipartitePair,
    k: usize,
    params: &RegularityParams,
    start: Side,
) -> Chain {
    assert!(k >= 1);
    let oriented = [pair.clone(), pair.swapped()];
    let floor_frac = {
        let d = rational(params.delta);
        &d * &d / rational(4.0)
    };
    let mut used = t.empty_set();
    let mut side = start;
    let mut cand = match start {
        Side::A => pair.a.clone(),
        Side::B => pair.b.clone(),
    };
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut sides = Vec::new();
    let mut floor_step = None;
    loop {
        let view = &oriented[(side == Side::B) as usize];
        if floor_step.is_none() && cand.count() < ceil_times(&floor_frac, view.size_a()) {
            floor_step = Some(blocks.len());
        }
        let found = find_good_tuple(t, view, &cand, k, params).expect("candidates lie on the current side");
        let Some(tuple) = found else { break };
        for &v in &tuple.vertices {
            used.insert(v);
        }
        side = side.other();
        cand = oriented[(side == Side::B) as usize].a.clone();
        for &v in &tuple.vertices {
            cand.intersect_with(t.out_row(v));
        }
        cand.difference_with(used.words());
        blocks.push(tuple.vertices);
        sides.push(side.other());
    }
    let flat = PowerPath::new(k, blocks.iter().flatten().copied().collect());
    let path = flat.longest_valid_prefix(t);
    debug_assert_eq!(path.len(), flat.len(), "chain flattening must verify");
    Chain {
        blocks,
        sides,
        path,
        floor_step,
    }
}

/// The square-of-a-path chain (`k = 2`).
pub fn chain_square_path(
    t: &Tournament,
    pair: &BipartitePair,
    params: &RegularityParams,
    start: Side,
) -> PowerPath {
    chain_power_path(t, pair, 2, params, start).path
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_chain(t: &Tournament, c: &Chain) {
        assert!(c.path.is_valid(t));
        let mut seen = t.empty_set();
        for (i, b) in c.blocks.iter().enumerate() {
            for &v in b {
                assert!(!seen.contains(v));
                seen.insert(v);
            }
            if i > 0 {
                assert_ne!(c.sides[i], c.sides[i - 1]);
            }
        }
    }

    #[test]
    fn complete_pair_stalls_immediately_from_the_sink_side() {
        let t = Tournament::transitive(20).unwrap();
        let pair = BipartitePair::new(&t, t.vertex_set(0..10), t.vertex_set(10..20)).unwrap();
        let p = RegularityParams::default();
        // Pairs of B have no out-neighbours in A.
        assert_eq!(chain_square_path(&t, &pair, &p, Side::B).len(), 2);
        // From A: one pair in A, one in B, then nothing in A beats B.
        let c = chain_power_path(&t, &pair, 2, &p, Side::A);
        check_chain(&t, &c);
        assert_eq!(c.path.vertices, vec![0, 1, 10, 11]);
    }

    #[test]
    fn interleaved_transitive_halves_run_to_exhaustion() {
        for n in [10usize, 50, 100] {
            let t = Tournament::transitive(2 * n).unwrap();
            let pair = BipartitePair::new(
                &t,
                t.vertex_set((0..2 * n).step_by(2)),
                t.vertex_set((1..2 * n).step_by(2)),
            )
            .unwrap();
            let c = chain_power_path(&t, &pair, 2, &RegularityParams::default(), Side::A);
            check_chain(&t, &c);
            assert!(c.path.len() >= n, "n={n}: {}", c.path.len());
        }
    }

    #[test]
    fn random_pairs_give_long_verified_chains() {
        let p = RegularityParams { eps: 0.01, delta: 0.1, ..Default::default() };
        for seed in 0..10u64 {
            let t = Tournament::random(400, seed).unwrap();
            let pair = BipartitePair::new(&t, t.vertex_set(0..200), t.vertex_set(200..400)).unwrap();
            for k in [2, 3] {
                let c = chain_power_path(&t, &pair, k, &p, Side::A);
                check_chain(&t, &c);
                assert!(c.path.len() >= 40, "seed {seed} k {k}: {}", c.path.len());
            }
        }
    }
}
