//! Naive oracles shared by the integration tests.
#![allow(dead_code)]

use ppath::Tournament;

/// Enumerate every k-th power sequence by plain extension, in lexicographic
/// order; return the first one of maximum length.
pub fn brute_force(t: &Tournament, k: usize) -> Vec<usize> {
    fn extend(t: &Tournament, k: usize, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cur.len() > best.len() {
            best.clone_from(cur);
        }
        for w in 0..t.n() {
            if cur.contains(&w) {
                continue;
            }
            let m = cur.len();
            if cur[m.saturating_sub(k)..].iter().all(|&v| t.has_edge(v, w)) {
                cur.push(w);
                extend(t, k, cur, best);
                cur.pop();
            }
        }
    }
    let mut best = Vec::new();
    extend(t, k, &mut Vec::new(), &mut best);
    best
}

/// Minimum over all labeled tournaments on `n` vertices of the brute-force
/// longest `k`-th power, and how many attain it.
pub fn brute_force_minimum(n: usize, k: usize) -> (usize, u64) {
    let m = n * (n - 1) / 2;
    let mut min = usize::MAX;
    let mut count = 0;
    for mask in 0..1u64 << m {
        let mut bit = 0;
        let mut beats = vec![vec![false; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                if mask >> bit & 1 == 1 {
                    beats[i][j] = true;
                } else {
                    beats[j][i] = true;
                }
                bit += 1;
            }
        }
        let t = Tournament::from_fn(n, |i, j| beats[i][j]).unwrap();
        let v = brute_force(&t, k).len();
        if v < min {
            min = v;
            count = 0;
        }
        if v == min {
            count += 1;
        }
    }
    (min, count)
}
