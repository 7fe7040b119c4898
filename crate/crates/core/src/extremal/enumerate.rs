//! Exhaustive minimum of the longest `k`-th power path over all labeled
//! tournaments on `n <= 7` vertices.

use rayon::prelude::*;

use super::{canonical_fingerprint, BoundFlag, Method, SearchError, SearchRecord};
use crate::solver::{longest_power_path_exact, PowerPath, SolveBudget};
use crate::tournament::Tournament;

pub const ENUMERATION_LIMIT: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub n: usize,
    pub k: usize,
    pub min: usize,
    /// The minimizer with the smallest pair mask.
    pub witness: Tournament,
    pub witness_mask: u64,
    /// Lexicographically least longest power path of `witness`.
    pub witness_path: PowerPath,
    /// Labeled tournaments attaining `min`.
    pub minimizers: u64,
    pub total: u64,
}

impl Enumeration {
    pub fn record(&self) -> SearchRecord {
        SearchRecord {
            n: self.n,
            k: self.k,
            fingerprint: canonical_fingerprint(&self.witness),
            pp: self.min,
            bound: BoundFlag::Exact,
            witness: self.witness_path.clone(),
            tournament: self.witness.clone(),
            seed: 0,
            method: Method::Enumeration,
            chain: 0,
            iteration: 0,
        }
    }
}

#[derive(Clone, Copy)]
struct Best {
    min: usize,
    mask: u64,
    count: u64,
}

impl Best {
    const NONE: Best = Best {
        min: usize::MAX,
        mask: u64::MAX,
        count: 0,
    };

    /// Associative and commutative, so the parallel reduction is deterministic.
    fn merge(self, other: Best) -> Best {
        match self.min.cmp(&other.min) {
            std::cmp::Ordering::Less => self,
            std::cmp::Ordering::Greater => other,
            std::cmp::Ordering::Equal => Best {
                min: self.min,
                mask: self.mask.min(other.mask),
                count: self.count + other.count,
            },
        }
    }
}

const UNLIMITED: SolveBudget = SolveBudget {
    max_states: u64::MAX,
    max_millis: u64::MAX,
};

/// Visit every pair mask (bit `pair_index(i, j)` set means `i -> j`).
pub fn enumerate_min_pp(n: usize, k: usize) -> Result<Enumeration, SearchError> {
    if n > ENUMERATION_LIMIT {
        return Err(SearchError::UseAnnealInstead(n));
    }
    if n == 0 || k == 0 {
        return Err(SearchError::InvalidConfig("n and k must be positive".into()));
    }
    let total = 1u64 << (n * (n - 1) / 2);
    let best = (0..total)
        .into_par_iter()
        .map(|mask| {
            let t = Tournament::from_pair_mask(n, mask).expect("n <= 7");
            Best {
                min: power_value(&t, k),
                mask,
                count: 1,
            }
        })
        .reduce(|| Best::NONE, Best::merge);
    let witness = Tournament::from_pair_mask(n, best.mask)?;
    let witness_path = longest_power_path_exact(&witness, k, UNLIMITED).expect("unlimited");
    debug_assert_eq!(witness_path.len(), best.min);
    Ok(Enumeration {
        n,
        k,
        min: best.min,
        witness,
        witness_mask: best.mask,
        witness_path,
        minimizers: best.count,
        total,
    })
}

fn power_value(t: &Tournament, k: usize) -> usize {
    longest_power_path_exact(t, k, UNLIMITED).expect("unlimited").len()
}
