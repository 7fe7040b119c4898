//! Time the exact solver on random and structured tournaments.
//!
//! `cargo run --release --example exact_limits`

use std::collections::BTreeSet;
use std::time::Instant;

use ppath::solver::{longest_power_path_exact, SolveBudget};
use ppath::Tournament;

fn quadratic_residues(p: usize) -> BTreeSet<usize> {
    (1..p).map(|x| x * x % p).collect()
}

/// Circulant with a pseudo-random antisymmetric connection set.
fn random_circulant(n: usize, seed: u64) -> Tournament {
    let res: BTreeSet<usize> = (1..=(n - 1) / 2)
        .map(|d| {
            if ppath::rng::splitmix_at(seed, d as u64) >> 63 == 1 {
                d
            } else {
                n - d
            }
        })
        .collect();
    Tournament::rotational(n, &res).unwrap()
}

fn time(label: &str, t: &Tournament, k: usize, budget: SolveBudget) {
    let start = Instant::now();
    let r = longest_power_path_exact(t, k, budget);
    let ms = start.elapsed().as_millis();
    match r {
        Ok(p) => println!(
            "{label} n={} k={k} len={} verified={} ms={ms}",
            t.n(),
            p.len(),
            p.is_valid(t)
        ),
        Err(e) => println!("{label} n={} k={k} budget exceeded after {} states, lb={} ms={ms}", t.n(), e.states, e.best.len()),
    }
}

fn main() {
    let budget = SolveBudget {
        max_states: 30_000_000,
        max_millis: 300_000,
    };
    for k in [1usize, 2, 3] {
        for n in [12usize, 16, 18, 20] {
            let t = Tournament::random(n, 0).unwrap();
            time("random", &t, k, budget);
        }
    }
    for p in [7usize, 11, 19, 23] {
        time("qr", &Tournament::rotational(p, &quadratic_residues(p)).unwrap(), 2, budget);
    }
    for n in [13usize, 15, 17, 19, 21] {
        time("circulant", &random_circulant(n, 3), 2, budget);
    }
    let c3 = Tournament::rotational(3, &[1].into()).unwrap();
    let c9 = Tournament::from_fn(9, |i, j| {
        if i / 3 == j / 3 { c3.has_edge(i % 3, j % 3) } else { c3.has_edge(i / 3, j / 3) }
    }).unwrap();
    time("c3[c3]", &c9, 2, budget);
    let c27 = Tournament::from_fn(27, |i, j| {
        if i / 9 == j / 9 { c9.has_edge(i % 9, j % 9) } else { c3.has_edge(i / 9, j / 9) }
    }).unwrap();
    time("c3[c3[c3]]", &c27, 2, budget);
}
