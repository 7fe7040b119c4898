//! Properties of the constructive pieces, checked against naive oracles.

use proptest::prelude::*;

use ppath::proof::{
    build_cluster_digraph, chain_power_path, concatenate_along_cluster_path, exact_subfinder, find_good_pair,
    find_kth_power_path, find_square_path, order_or_long_path, sampled_regular, FinderConfig, OrientedGraph,
    PathOrOrdering, RegularityParams, Side,
};
use ppath::solver::{longest_power_path_exact, SolveBudget};
use ppath::{BipartitePair, Tournament};

/// Naive check of the ordering-or-path contract.
fn dichotomy_holds(g: &OrientedGraph, k: usize, r: &PathOrOrdering) -> bool {
    let n = g.n();
    match r {
        PathOrOrdering::Ordering(c) => {
            let mut seen = vec![false; n];
            for &v in &c.order {
                if v >= n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
            c.order.len() == n
                && (0..n).all(|i| (i + 1..n).filter(|&j| g.has_arc(c.order[j], c.order[i])).count() < k)
        }
        PathOrOrdering::Path(p) => {
            let v = &p.vertices;
            let mut sorted = v.clone();
            sorted.sort_unstable();
            sorted.dedup();
            v.len() > k && sorted.len() == v.len() && v.windows(2).all(|w| g.has_arc(w[0], w[1]))
        }
    }
}

fn common_out_count(t: &Tournament, x: usize, y: usize, b: &[usize]) -> usize {
    b.iter().filter(|&&w| t.has_edge(x, w) && t.has_edge(y, w)).count()
}

fn parts_of(t: &Tournament, size: usize) -> Vec<ppath::VertexSet> {
    (0..t.n() / size).map(|p| t.vertex_set(p * size..(p + 1) * size)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn ordering_or_long_path(n in 1usize..40, p in 0.0f64..1.0, k in 1usize..7, seed in any::<u64>()) {
        let g = OrientedGraph::random(n, p, seed);
        let r = order_or_long_path(&g, k);
        prop_assert!(dichotomy_holds(&g, k, &r));
        prop_assert!(r.holds(&g, k));
    }

    #[test]
    fn found_good_pairs_are_good(seed in any::<u64>(), half in 4usize..30, eps in 0.005f64..0.05) {
        let t = Tournament::random(2 * half, seed).unwrap();
        let pair = BipartitePair::new(&t, t.vertex_set(0..half), t.vertex_set(half..2 * half)).unwrap();
        let p = RegularityParams { eps, delta: 0.3, ..Default::default() };
        let b: Vec<usize> = (half..2 * half).collect();
        let d = pair.edges_ab() as f64 / (half * half) as f64;
        let thr = ((d * d - 10.0 * eps) * half as f64).max(0.0);
        match find_good_pair(&t, &pair, &pair.a.clone(), &p).unwrap() {
            Some(g) => {
                prop_assert!(t.has_edge(g.x, g.y));
                prop_assert_eq!(g.witness_size, common_out_count(&t, g.x, g.y, &b));
                prop_assert!(g.witness_size as f64 >= thr - 1e-9);
            }
            None => {
                for x in 0..half {
                    for y in x + 1..half {
                        prop_assert!((common_out_count(&t, x, y, &b) as f64) < thr + 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn chains_verify_and_alternate(seed in any::<u64>(), half in 2usize..80, k in 1usize..4, start_b in any::<bool>()) {
        let t = Tournament::random(2 * half, seed).unwrap();
        let pair = BipartitePair::new(&t, t.vertex_set(0..half), t.vertex_set(half..2 * half)).unwrap();
        let start = if start_b { Side::B } else { Side::A };
        let c = chain_power_path(&t, &pair, k, &RegularityParams::default(), start);
        prop_assert!(c.path.is_valid(&t));
        prop_assert_eq!(c.path.len(), c.blocks.iter().map(Vec::len).sum::<usize>());
        for (i, blk) in c.blocks.iter().enumerate() {
            let side = if c.sides[i] == Side::A { &pair.a } else { &pair.b };
            prop_assert!(blk.iter().all(|&v| side.contains(v)));
            if i > 0 {
                prop_assert_ne!(c.sides[i], c.sides[i - 1]);
            }
        }
        if let Some(first) = c.sides.first() {
            prop_assert_eq!(*first, start);
        }
    }

    #[test]
    fn cluster_arcs_match_densities(seed in any::<u64>(), size in 3usize..15, parts in 2usize..6, delta in 0.05f64..0.5) {
        let t = Tournament::random(size * parts, seed).unwrap();
        let p = RegularityParams { eps: delta / 2.0, delta, parts, samples: 4 };
        let cd = build_cluster_digraph(&t, &parts_of(&t, size), &p, seed);
        for pr in &cd.probes {
            let fwd = cd.has_arc(pr.i, pr.j);
            let back = cd.has_arc(pr.j, pr.i);
            let mid = cd.mid_pairs.contains(&(pr.i, pr.j));
            prop_assert!(u8::from(fwd) + u8::from(back) + u8::from(mid) <= 1);
            if fwd || back || mid {
                prop_assert!(pr.regular);
            }
            let cross = pr.cross as f64;
            if fwd {
                prop_assert!(pr.edges_ij as f64 >= (1.0 - delta) * cross - 1e-9);
            }
            if back {
                prop_assert!((pr.cross - pr.edges_ij) as f64 >= (1.0 - delta) * cross - 1e-9);
            }
        }
    }

    #[test]
    fn concatenation_is_sound(seed in any::<u64>(), size in 2usize..10, parts in 2usize..5) {
        let t = Tournament::random(size * parts, seed).unwrap();
        let p = RegularityParams::default();
        let cd = build_cluster_digraph(&t, &parts_of(&t, size), &p, seed);
        let route: Vec<usize> = (0..parts).collect();
        let mut sub = exact_subfinder(&t, 2, SolveBudget::default());
        let c = concatenate_along_cluster_path(&t, &cd, &route, 2, &p, &mut sub);
        prop_assert!(c.path.is_valid(&t));
    }

    #[test]
    fn finder_is_sound(n in 1usize..120, seed in any::<u64>(), k in 1usize..4, parts in 2usize..9, eps in 0.01f64..0.2) {
        let t = Tournament::random(n, seed).unwrap();
        let cfg = FinderConfig {
            params: RegularityParams { eps, delta: (2.0 * eps).min(0.5), parts, samples: 8 },
            seed,
            ..Default::default()
        };
        let r = find_kth_power_path(&t, k, &cfg);
        prop_assert!(r.path.is_valid(&t));
        prop_assert!(r.path.len() >= 1 && r.path.len() <= n);
        prop_assert_eq!(r.path.k, k);
        if n <= cfg.base_case && k >= 2 {
            let exact = longest_power_path_exact(&t, k, SolveBudget::default()).unwrap();
            prop_assert_eq!(r.path.len(), exact.len());
        }
    }
}

#[test]
fn finder_sound_at_n256() {
    for seed in 0..100 {
        let t = Tournament::random(256, seed).unwrap();
        let r = find_square_path(&t, &FinderConfig { seed, ..Default::default() });
        assert!(r.path.is_valid(&t), "seed {seed}");
        assert!(!r.trace.is_empty());
    }
}

/// A = A1 ∪ A2 with A1 beating all of B and B beating all of A2.
fn split_pair(half: usize, b: usize) -> (Tournament, BipartitePair) {
    let t = Tournament::from_fn(2 * half + b, |i, j| !(j >= 2 * half && (half..2 * half).contains(&i))).unwrap();
    let pair = BipartitePair::new(&t, t.vertex_set(0..2 * half), t.vertex_set(2 * half..2 * half + b)).unwrap();
    (t, pair)
}

fn binom(n: usize, r: usize) -> f64 {
    if r > n {
        return 0.0;
    }
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Probability that one uniform `s`-subset of A has density within `eps`
/// of 1/2 (the probe then misses on that sample).
fn hypergeometric_miss(half: usize, s: usize, eps: f64) -> f64 {
    (0..=s)
        .filter(|&x| (x as f64 / s as f64 - 0.5).abs() <= eps + 1e-12)
        .map(|x| binom(half, x) * binom(half, s - x) / binom(2 * half, s))
        .sum()
}

fn miss_rate(half: usize, samples: usize, trials: u64) -> f64 {
    let (t, pair) = split_pair(half, 20);
    let p = RegularityParams { eps: 0.1, delta: 0.2, parts: 2, samples };
    let misses = (0..trials).filter(|&seed| sampled_regular(&t, &pair, &p, seed).regular).count();
    misses as f64 / trials as f64
}

#[test]
fn odd_sample_size_always_detects_the_split() {
    // |A| = 30, eps = 0.1: samples of 3 have density in {0, 1/3, 2/3, 1}.
    assert_eq!(hypergeometric_miss(15, 3, 0.1), 0.0);
    assert_eq!(miss_rate(15, 1, 500), 0.0);
}

#[test]
fn split_detection_matches_hypergeometric_oracle() {
    // |A| = 40, eps = 0.1: a sample of 4 misses iff it takes 2 from each half.
    let q = hypergeometric_miss(20, 4, 0.1);
    assert!((q - 190.0 * 190.0 / 91390.0).abs() < 1e-12);
    let trials = 4000u64;
    for samples in 1..=3 {
        let expect = q.powi(samples as i32);
        let se = (expect * (1.0 - expect) / trials as f64).sqrt();
        let got = miss_rate(20, samples, trials);
        assert!((got - expect).abs() <= 5.0 * se, "samples={samples}: {got} vs {expect}");
        assert!(expect <= 0.5f64.powi(samples as i32));
    }
}

#[test]
fn two_vertex_samples_miss_more_than_half_the_time() {
    // |A| = 20, eps = 0.1: one from each half gives density exactly 1/2,
    // probability 100/190 > 1/2, so a 1 - 2^-samples detection bound fails.
    let q = hypergeometric_miss(10, 2, 0.1);
    assert!((q - 100.0 / 190.0).abs() < 1e-12);
    let trials = 4000u64;
    let se = (q * (1.0 - q) / trials as f64).sqrt();
    let got = miss_rate(10, 1, trials);
    assert!((got - q).abs() <= 5.0 * se, "{got} vs {q}");
    assert!(got > 0.5);
}

#[test]
fn blown_up_triangle_concatenates_along_its_cluster_path() {
    let c3 = Tournament::rotational(3, &[1].into()).unwrap();
    let t = c3.blow_up(20).unwrap();
    let p = RegularityParams::default();
    let cd = build_cluster_digraph(&t, &parts_of(&t, 20), &p, 0);
    // Every cluster vertex has in-degree 1, so nothing peels at k = 1.
    let PathOrOrdering::Path(route) = order_or_long_path(&cd.graph(), 1) else {
        panic!("a directed triangle has no source");
    };
    assert_eq!(route.len(), 3);
    let mut sub = exact_subfinder(&t, 2, SolveBudget::default());
    let c = concatenate_along_cluster_path(&t, &cd, &route.vertices, 2, &p, &mut sub);
    assert!(c.path.is_valid(&t));
    assert_eq!(c.path.len(), 60);
}
