//! Exact longest k-th power of a path.
//!
//! Memoized DFS over states `(used set, last min(k, len) vertices in order)`.
//! The value of a state is the maximum number of vertices that can still be
//! appended; it only depends on the state, so each state is expanded once.
//! A state's children are tried in increasing label order and expansion stops
//! as soon as a child reaches the reachability upper bound (the number of
//! unused vertices reachable from the last vertex through unused vertices).
//! The witness is rebuilt from the memo by always taking the smallest label
//! that attains the optimum, which yields the lexicographically least
//! maximum-length sequence.
//!
//! Masks are single `u64` words, so exact search is limited to `n <= 64`;
//! beyond that the solver reports [`BudgetExceeded`] with a greedy witness.
//! Instances whose optimum spans every vertex finish in about a millisecond
//! because the first full-length branch meets the bound; the cost grows with
//! the gap between the optimum and `n` (see `examples/exact_limits.rs`).

use std::time::Instant;

use rustc_hash::FxHashMap;
use thiserror::Error;

use super::greedy::greedy_power_path;
use super::PowerPath;
use crate::tournament::Tournament;

/// Caps for one exact solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SolveBudget {
    pub max_states: u64,
    pub max_millis: u64,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            max_states: 4_000_000,
            max_millis: 60_000,
        }
    }
}

impl SolveBudget {
    pub fn states(max_states: u64) -> Self {
        SolveBudget {
            max_states,
            ..Default::default()
        }
    }

    pub fn doubled(self) -> Self {
        SolveBudget {
            max_states: self.max_states.saturating_mul(2),
            max_millis: self.max_millis.saturating_mul(2),
        }
    }
}

/// The search ran out of budget. `best` is a verified lower-bound witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("exact search exceeded its budget after {states} states; best lower bound has {} vertices", best.len())]
pub struct BudgetExceeded {
    pub best: PowerPath,
    pub states: u64,
    pub millis: u64,
}

/// Packed tails hold up to 21 six-bit labels.
const PACKED_TAIL: usize = 21;

enum Memo {
    Packed(FxHashMap<(u64, u128), u8>),
    Wide(FxHashMap<(u64, Vec<u8>), u8>),
}

impl Memo {
    fn get(&self, mask: u64, tail: &[usize]) -> Option<u8> {
        match self {
            Memo::Packed(m) => m.get(&(mask, pack(tail))).copied(),
            Memo::Wide(m) => m.get(&(mask, wide(tail))).copied(),
        }
    }

    fn insert(&mut self, mask: u64, tail: &[usize], v: u8) {
        match self {
            Memo::Packed(m) => {
                m.insert((mask, pack(tail)), v);
            }
            Memo::Wide(m) => {
                m.insert((mask, wide(tail)), v);
            }
        }
    }
}

#[inline]
fn pack(tail: &[usize]) -> u128 {
    tail.iter().fold(0u128, |acc, &v| (acc << 6) | v as u128)
}

fn wide(tail: &[usize]) -> Vec<u8> {
    tail.iter().map(|&v| v as u8).collect()
}

struct Search {
    out: Vec<u64>,
    n: usize,
    k: usize,
    memo: Memo,
    states: u64,
    budget: SolveBudget,
    started: Instant,
    aborted: bool,
    path: Vec<usize>,
    deepest: Vec<usize>,
}

impl Search {
    #[inline]
    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    #[inline]
    fn candidates(&self, mask: u64) -> u64 {
        let m = self.path.len();
        let mut c = !mask & self.full();
        for &v in &self.path[m - self.k.min(m)..] {
            c &= self.out[v];
        }
        c
    }

    /// Unused vertices reachable from the last vertex through unused vertices.
    fn reach_bound(&self, mask: u64, first: u64) -> u32 {
        let free = !mask & self.full();
        let mut seen = first;
        let mut frontier = first;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.out[v];
            }
            next &= free & !seen;
            seen |= next;
            frontier = next;
        }
        seen.count_ones()
    }

    fn tail(&self) -> &[usize] {
        let m = self.path.len();
        &self.path[m - self.k.min(m)..]
    }

    fn value(&mut self, mask: u64) -> u8 {
        if self.aborted {
            return 0;
        }
        let cand = self.candidates(mask);
        if cand == 0 {
            return 0;
        }
        if let Some(v) = self.memo.get(mask, self.tail()) {
            return v;
        }
        let ub = self.reach_bound(mask, cand) as u8;
        let mut best = 0u8;
        let mut c = cand;
        while c != 0 {
            let w = c.trailing_zeros() as usize;
            c &= c - 1;
            self.path.push(w);
            if self.path.len() > self.deepest.len() {
                self.deepest.clone_from(&self.path);
            }
            let v = 1 + self.value(mask | 1 << w);
            self.path.pop();
            if self.aborted {
                return 0;
            }
            if v > best {
                best = v;
                if best == ub {
                    break;
                }
            }
        }
        let m = self.path.len();
        self.memo
            .insert(mask, &self.path[m - self.k.min(m)..], best);
        self.states += 1;
        if self.states > self.budget.max_states
            || (self.states & 0xfff == 0
                && self.started.elapsed().as_millis() as u64 > self.budget.max_millis)
        {
            self.aborted = true;
        }
        best
    }
}

/// Maximum-order k-th power of a path in `t`, lexicographically least among
/// all maximum-order witnesses.
pub fn longest_power_path_exact(
    t: &Tournament,
    k: usize,
    budget: SolveBudget,
) -> Result<PowerPath, BudgetExceeded> {
    assert!(k >= 1, "power order must be positive");
    let n = t.n();
    let started = Instant::now();
    if n > 64 {
        return Err(BudgetExceeded {
            best: greedy_power_path(t, k, 0),
            states: 0,
            millis: 0,
        });
    }
    // A k-th power with k >= n-1 is the same object as an (n-1)-th power.
    let k_eff = k.min(n.saturating_sub(1)).max(1);
    let out: Vec<u64> = (0..n).map(|i| t.out_row(i)[0]).collect();
    let memo = if k_eff <= PACKED_TAIL {
        Memo::Packed(FxHashMap::default())
    } else {
        Memo::Wide(FxHashMap::default())
    };
    let mut s = Search {
        out,
        n,
        k: k_eff,
        memo,
        states: 0,
        budget,
        started,
        aborted: false,
        path: Vec::with_capacity(n),
        deepest: Vec::new(),
    };

    let mut best = 0u8;
    let mut best_start = 0usize;
    for v in 0..n {
        s.path.push(v);
        if s.deepest.is_empty() {
            s.deepest.push(v);
        }
        let val = 1 + s.value(1u64 << v);
        s.path.pop();
        if s.aborted {
            break;
        }
        if val > best {
            best = val;
            best_start = v;
            if best as usize == n {
                break;
            }
        }
    }

    if s.aborted {
        let greedy = greedy_power_path(t, k, 0);
        let lower = if greedy.len() >= s.deepest.len() {
            greedy
        } else {
            PowerPath::new(k, s.deepest.clone())
        };
        debug_assert!(lower.is_valid(t));
        return Err(BudgetExceeded {
            best: lower,
            states: s.states,
            millis: started.elapsed().as_millis() as u64,
        });
    }

    // Rebuild the lexicographically least optimum from the memo. Every state
    // visited here was fully evaluated above, so no new budget is needed.
    s.budget = SolveBudget {
        max_states: u64::MAX,
        max_millis: u64::MAX,
    };
    s.path.clear();
    s.path.push(best_start);
    let mut mask = 1u64 << best_start;
    let mut remaining = best - 1;
    while remaining > 0 {
        let mut c = s.candidates(mask);
        let mut chosen = None;
        while c != 0 {
            let w = c.trailing_zeros() as usize;
            c &= c - 1;
            s.path.push(w);
            let v = 1 + s.value(mask | 1 << w);
            if v == remaining {
                chosen = Some(w);
                break;
            }
            s.path.pop();
        }
        let w = chosen.expect("memo values are consistent");
        mask |= 1 << w;
        remaining -= 1;
    }
    let p = PowerPath::new(k, s.path);
    debug_assert!(p.is_valid(t), "exact witness failed verification");
    Ok(p)
}

/// Vertex count of the longest square of a path.
pub fn pp_value(t: &Tournament, budget: SolveBudget) -> Result<usize, BudgetExceeded> {
    longest_power_path_exact(t, 2, budget).map(|p| p.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(t: &Tournament, k: usize) -> PowerPath {
        longest_power_path_exact(t, k, SolveBudget::default()).unwrap()
    }

    #[test]
    fn transitive_is_full() {
        for n in 1..=12 {
            let t = Tournament::transitive(n).unwrap();
            for k in 1..=3 {
                assert_eq!(exact(&t, k).vertices, (0..n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn triangle_square_is_an_edge() {
        let c3 = Tournament::rotational(3, &[1].into()).unwrap();
        assert_eq!(exact(&c3, 2).vertices, vec![0, 1]);
        assert_eq!(pp_value(&c3, SolveBudget::default()).unwrap(), 2);
        assert_eq!(exact(&c3, 1).vertices, vec![0, 1, 2]);
    }

    #[test]
    fn large_k_is_transitive_subtournament() {
        let t = Tournament::random(9, 4).unwrap();
        let a = exact(&t, 8);
        let b = exact(&t, 30);
        assert_eq!(a.len(), b.len());
        assert!(b.is_valid(&t));
    }

    #[test]
    fn budget_exhaustion_keeps_a_witness() {
        let t = Tournament::random(18, 1).unwrap();
        let err = longest_power_path_exact(&t, 2, SolveBudget::states(10)).unwrap_err();
        assert!(err.best.is_valid(&t));
        assert!(err.best.len() >= 2);
        assert!(err.states > 10);
    }

    #[test]
    fn large_hosts_report_a_lower_bound() {
        let t = Tournament::transitive(70).unwrap();
        let err = longest_power_path_exact(&t, 2, SolveBudget::default()).unwrap_err();
        assert_eq!(err.best.len(), 70);
    }
}
