//! Sampling probe for regularity of a pair.
//!
//! Draws `samples` independent uniform sub-pairs `(A', B')` with
//! `|A'| = ceil(eps |A|)`, `|B'| = ceil(eps |B|)` and declares the pair
//! regular iff every sampled density is within `eps` of the full density.
//! A failing sub-pair is returned so the verdict can be checked.

use num_bigint::BigInt;
use rand::seq::index::sample;

use super::threshold::{ceil_times, rational};
use super::RegularityParams;
use crate::rng::stream_rng;
use crate::tournament::{BipartitePair, Tournament, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub regular: bool,
    /// First sampled sub-pair whose density is off by more than `eps`.
    pub witness: Option<(VertexSet, VertexSet)>,
}

/// Whether `e_sub / (sa sb)` lies within `eps` of `e / (a b)`, exactly.
pub fn within_eps(
    e_sub: u64,
    sa: usize,
    sb: usize,
    e: u64,
    a: usize,
    b: usize,
    params: &RegularityParams,
) -> bool {
    // |e_sub a b - e sa sb| <= eps sa sb a b, cleared of the eps denominator.
    let eps = rational(params.eps);
    let full = BigInt::from(a) * BigInt::from(b);
    let sub = BigInt::from(sa) * BigInt::from(sb);
    let lhs = (BigInt::from(e_sub) * &full - BigInt::from(e) * &sub) * eps.denom();
    let rhs = eps.numer() * sub * full;
    lhs.magnitude() <= rhs.magnitude()
}

pub fn sampled_regular(
    t: &Tournament,
    pair: &BipartitePair,
    params: &RegularityParams,
    seed: u64,
) -> RegularityVerdict {
    let eps = rational(params.eps);
    let a_members = pair.a.to_vec();
    let b_members = pair.b.to_vec();
    let sa = ceil_times(&eps, a_members.len()).clamp(1, a_members.len());
    let sb = ceil_times(&eps, b_members.len()).clamp(1, b_members.len());
    let mut rng = stream_rng(seed, "regularity");
    for _ in 0..params.samples {
        let a_sub = t.vertex_set(sample(&mut rng, a_members.len(), sa).into_iter().map(|i| a_members[i]));
        let b_sub = t.vertex_set(sample(&mut rng, b_members.len(), sb).into_iter().map(|i| b_members[i]));
        let e_sub = t.edge_count(&a_sub, &b_sub);
        if !within_eps(e_sub, sa, sb, pair.edges_ab(), pair.size_a(), pair.size_b(), params) {
            return RegularityVerdict {
                regular: false,
                witness: Some((a_sub, b_sub)),
            };
        }
    }
    RegularityVerdict {
        regular: true,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_pair_is_regular() {
        let t = Tournament::transitive(40).unwrap();
        let pair = BipartitePair::new(&t, t.vertex_set(0..20), t.vertex_set(20..40)).unwrap();
        for eps in [0.01, 0.1, 0.3] {
            let p = RegularityParams { eps, delta: 0.4, ..Default::default() };
            assert!(sampled_regular(&t, &pair, &p, 1).regular);
        }
    }

    #[test]
    fn same_seed_same_verdict() {
        let t = Tournament::random(100, 9).unwrap();
        let pair = BipartitePair::new(&t, t.vertex_set(0..50), t.vertex_set(50..100)).unwrap();
        let p = RegularityParams { eps: 0.1, delta: 0.2, samples: 8, parts: 2 };
        for seed in 0..20 {
            assert_eq!(sampled_regular(&t, &pair, &p, seed), sampled_regular(&t, &pair, &p, seed));
        }
    }

    #[test]
    fn witness_really_violates() {
        // A1 = 0..10 beats all of B, A2 = 10..20 loses to all of B.
        let t = Tournament::from_fn(30, |i, j| j >= 20 && i < 10 || (i < 20 && j < 20)).unwrap();
        let pair = BipartitePair::new(&t, t.vertex_set(0..20), t.vertex_set(20..30)).unwrap();
        let p = RegularityParams { eps: 0.1, delta: 0.2, samples: 16, parts: 2 };
        let v = sampled_regular(&t, &pair, &p, 0);
        assert!(!v.regular);
        let (a, b) = v.witness.unwrap();
        let e = t.edge_count(&a, &b);
        assert!(!within_eps(e, a.count(), b.count(), pair.edges_ab(), 20, 10, &p));
    }

    #[test]
    fn eps_window_is_inclusive() {
        let p = RegularityParams { eps: 0.25, delta: 0.3, samples: 1, parts: 2 };
        // full density 1/2, sub density 3/4: exactly at the boundary.
        assert!(within_eps(3, 2, 2, 2, 2, 2, &p));
        assert!(!within_eps(4, 2, 2, 2, 2, 2, &p));
    }
}
