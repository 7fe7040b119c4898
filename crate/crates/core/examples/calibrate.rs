//! Pilot runs behind the acceptance thresholds and the annealing defaults.
//! Seeds start at 1000 so they never overlap the acceptance seeds.
//!
//!     cargo run --release --example calibrate > crates/core/calibration/pilot.json

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde_json::json;

use ppath::bitset::and3_count;
use ppath::extremal::{anneal_min_pp, enumerate_min_pp, AnnealConfig};
use ppath::proof::{chain_square_path, find_square_path, min_witness, FinderConfig, RegularityParams, Side};
use ppath::rng::stream_rng;
use ppath::{BipartitePair, Tournament};

const PILOT: u64 = 1000;

fn non_good_fraction(t: &Tournament, pair: &BipartitePair, p: &RegularityParams) -> f64 {
    let thr = min_witness(pair, 2, p);
    let a = pair.a.to_vec();
    let mut bad = 0u64;
    let mut total = 0u64;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            total += 1;
            if and3_count(t.out_row(a[i]), t.out_row(a[j]), pair.b.words()) < thr {
                bad += 1;
            }
        }
    }
    bad as f64 / total as f64
}

fn random_halves(n: usize, seed: u64) -> (Vec<usize>, Vec<usize>) {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(&mut stream_rng(seed, "split"));
    let b = v.split_off(n / 2);
    (v, b)
}

fn median(mut v: Vec<usize>) -> usize {
    v.sort_unstable();
    v[v.len() / 2]
}

fn main() {
    let p4 = RegularityParams { eps: 0.01, delta: 0.1, ..Default::default() };
    let fractions: Vec<f64> = (PILOT..PILOT + 20)
        .into_par_iter()
        .map(|seed| {
            let t = Tournament::random(600, seed).unwrap();
            let pair = BipartitePair::new(&t, t.vertex_set(0..300), t.vertex_set(300..600)).unwrap();
            non_good_fraction(&t, &pair, &p4).max(non_good_fraction(&t, &pair.swapped(), &p4))
        })
        .collect();

    let chains: Vec<usize> = (PILOT..PILOT + 100)
        .into_par_iter()
        .map(|seed| {
            let t = Tournament::random(1000, seed).unwrap();
            let (a, b) = random_halves(1000, seed);
            let pair = BipartitePair::new(&t, t.vertex_set(a), t.vertex_set(b)).unwrap();
            chain_square_path(&t, &pair, &p4, Side::A).len()
        })
        .collect();
    let mut sorted_chains = chains.clone();
    sorted_chains.sort_unstable();

    let growth: Vec<serde_json::Value> = [64usize, 128, 256, 512]
        .iter()
        .map(|&n| {
            let lens: Vec<usize> = (PILOT..PILOT + 50)
                .into_par_iter()
                .map(|seed| {
                    let t = Tournament::random(n, seed).unwrap();
                    find_square_path(&t, &FinderConfig { seed, ..Default::default() }).path.len()
                })
                .collect();
            json!({"n": n, "median": median(lens.clone()), "min": lens.iter().min()})
        })
        .collect();

    let golden = enumerate_min_pp(6, 2).unwrap();
    let schedules: Vec<serde_json::Value> = [(0.99, 100u64), (0.999, 10), (0.9, 100), (0.99, 10)]
        .iter()
        .map(|&(cooling_rate, moves_per_step)| {
            let hits = (PILOT..PILOT + 50)
                .into_par_iter()
                .filter(|&seed| {
                    let cfg = AnnealConfig { seed, cooling_rate, moves_per_step, iterations: 100_000, ..Default::default() };
                    let out = anneal_min_pp(6, 2, &cfg, 1 << 20).unwrap();
                    out.records.iter().map(|r| r.pp).min() == Some(golden.min)
                })
                .count();
            json!({"cooling_rate": cooling_rate, "moves_per_step": moves_per_step, "iterations": 100_000, "hits_of_50": hits})
        })
        .collect();

    let golden7 = enumerate_min_pp(7, 2).unwrap();
    let schedules7: Vec<serde_json::Value> = [(0.99, 100u64), (0.999, 10), (0.9, 100), (0.99, 10), (0.9, 10)]
        .iter()
        .map(|&(cooling_rate, moves_per_step)| {
            let hits = (PILOT..PILOT + 50)
                .into_par_iter()
                .filter(|&seed| {
                    let cfg = AnnealConfig { seed, cooling_rate, moves_per_step, iterations: 2_000, ..Default::default() };
                    let out = anneal_min_pp(7, 2, &cfg, 1 << 20).unwrap();
                    out.records.iter().map(|r| r.pp).min() == Some(golden7.min)
                })
                .count();
            json!({"cooling_rate": cooling_rate, "moves_per_step": moves_per_step, "iterations": 2_000, "hits_of_50": hits})
        })
        .collect();

    let report = json!({
        "good_pairs": {
            "sides": 300, "eps": 0.01, "seeds": [PILOT, PILOT + 19],
            "max_non_good_fraction": fractions.iter().cloned().fold(0.0, f64::max),
        },
        "chain_n1000": {
            "seeds": [PILOT, PILOT + 99], "eps": 0.01, "delta": 0.1,
            "min": sorted_chains[0], "p05": sorted_chains[5], "median": sorted_chains[50],
            "at_least_50": chains.iter().filter(|&&l| l >= 50).count(),
        },
        "finder_growth": growth,
        "enumeration_n6_k2": {"min": golden.min, "minimizers": golden.minimizers, "witness_mask": golden.witness_mask},
        "anneal_n6_schedules": schedules,
        "enumeration_n7_k2": {"min": golden7.min, "minimizers": golden7.minimizers},
        "anneal_n7_schedules": schedules7,
    });
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
