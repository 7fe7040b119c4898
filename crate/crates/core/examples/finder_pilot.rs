//! Finder lengths, routes and timings on random tournaments.
use std::time::Instant;

use ppath::proof::{find_square_path, FinderConfig, Route};
use ppath::solver::greedy_power_path;
use ppath::Tournament;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let trials = args.first().copied().unwrap_or(10);
    let cfg = FinderConfig::default();
    for n in [64usize, 128, 256, 512] {
        let mut lens = Vec::new();
        let mut greedy = Vec::new();
        let mut routes = [0usize; 5];
        let t0 = Instant::now();
        for seed in 0..trials as u64 {
            let t = Tournament::random(n, seed).unwrap();
            let r = find_square_path(&t, &FinderConfig { seed, ..cfg });
            lens.push(r.path.len());
            greedy.push(greedy_power_path(&t, 2, seed).len());
            for rec in &r.trace {
                routes[match rec.route {
                    Route::Claim1 => 0,
                    Route::Claim2 => 1,
                    Route::Claim3 => 2,
                    Route::Base => 3,
                    Route::Greedy => 4,
                }] += 1;
            }
        }
        lens.sort_unstable();
        greedy.sort_unstable();
        println!(
            "n={n} median={} min={} greedy_median={} routes(c1,c2,c3,base,greedy)={routes:?} ms={}",
            lens[lens.len() / 2],
            lens[0],
            greedy[greedy.len() / 2],
            t0.elapsed().as_millis()
        );
    }
}
