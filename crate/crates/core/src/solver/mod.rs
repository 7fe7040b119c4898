//! Witnesses for k-th powers of paths, the verifier every result passes
//! through, and the exact and greedy solvers.

mod exact;
mod greedy;

pub use exact::{longest_power_path_exact, pp_value, BudgetExceeded, SolveBudget};
pub use greedy::{greedy_power_path, hamiltonian_path};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tournament::Tournament;

/// A sequence `x_0 .. x_{m-1}` claimed to be a `k`-th power of a path:
/// `x_i -> x_j` whenever `i < j <= i + k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PowerPath {
    pub k: usize,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("power order must be positive")]
    InvalidPower,
    #[error("label {label} at position {pos} is out of range for n={n}")]
    InvalidLabel { pos: usize, label: usize, n: usize },
    #[error("vertex {label} repeated at positions ({first},{second})")]
    Duplicate {
        first: usize,
        second: usize,
        label: usize,
    },
    #[error("missing edge between positions ({i},{j}): {from} does not beat {to}")]
    MissingEdge {
        i: usize,
        j: usize,
        from: usize,
        to: usize,
    },
}

impl PowerPath {
    pub fn new(k: usize, vertices: Vec<usize>) -> Self {
        PowerPath { k, vertices }
    }

    pub fn empty(k: usize) -> Self {
        PowerPath {
            k,
            vertices: Vec::new(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The last `min(k, len)` vertices: every extension must beat all of them.
    pub fn tail(&self) -> &[usize] {
        let m = self.vertices.len();
        &self.vertices[m - self.k.min(m)..]
    }

    /// Check the witness against `t`. Duplicates are reported before missing
    /// edges; positions are 0-based indices into `vertices`.
    pub fn verify(&self, t: &Tournament) -> Result<(), VerifyError> {
        if self.k == 0 {
            return Err(VerifyError::InvalidPower);
        }
        let n = t.n();
        let mut seen = vec![usize::MAX; n];
        for (pos, &v) in self.vertices.iter().enumerate() {
            if v >= n {
                return Err(VerifyError::InvalidLabel { pos, label: v, n });
            }
            if seen[v] != usize::MAX {
                return Err(VerifyError::Duplicate {
                    first: seen[v],
                    second: pos,
                    label: v,
                });
            }
            seen[v] = pos;
        }
        let m = self.vertices.len();
        for i in 0..m {
            for j in i + 1..=(i + self.k).min(m - 1) {
                let (from, to) = (self.vertices[i], self.vertices[j]);
                if !t.has_edge(from, to) {
                    return Err(VerifyError::MissingEdge { i, j, from, to });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, t: &Tournament) -> bool {
        self.verify(t).is_ok()
    }

    /// Longest prefix that verifies (duplicates and missing edges both cut).
    pub fn longest_valid_prefix(&self, t: &Tournament) -> PowerPath {
        let mut end = self.vertices.len();
        match self.verify(t) {
            Ok(()) => {}
            Err(VerifyError::Duplicate { second, .. }) => end = second,
            Err(VerifyError::MissingEdge { j, .. }) => end = j,
            Err(VerifyError::InvalidLabel { pos, .. }) => end = pos,
            Err(VerifyError::InvalidPower) => end = 0,
        }
        let p = PowerPath::new(self.k, self.vertices[..end].to_vec());
        // Cutting at the first violation can leave an earlier one (a duplicate
        // found first hides a missing edge before it), so recurse.
        if end < self.vertices.len() {
            p.longest_valid_prefix(t)
        } else {
            p
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Convenience: `verify_power_path(t, p)` as a free function.
pub fn verify_power_path(t: &Tournament, p: &PowerPath) -> Result<(), VerifyError> {
    p.verify(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transitive_order_is_every_power() {
        let t = Tournament::transitive(5).unwrap();
        for k in 1..7 {
            assert!(PowerPath::new(k, vec![0, 1, 2, 3, 4]).is_valid(&t));
        }
    }

    #[test]
    fn triangle_fails_at_first_skip() {
        let c3 = Tournament::rotational(3, &[1].into()).unwrap();
        assert_eq!(
            PowerPath::new(2, vec![0, 1, 2]).verify(&c3),
            Err(VerifyError::MissingEdge {
                i: 0,
                j: 2,
                from: 0,
                to: 2
            })
        );
        assert!(PowerPath::new(1, vec![0, 1, 2]).is_valid(&c3));
    }

    #[test]
    fn vacuous_and_error_cases() {
        let t = Tournament::random(6, 1).unwrap();
        assert!(PowerPath::new(5, vec![3]).is_valid(&t));
        assert!(PowerPath::new(2, vec![]).is_valid(&t));
        assert!(matches!(
            PowerPath::new(2, vec![0, 9]).verify(&t),
            Err(VerifyError::InvalidLabel { pos: 1, label: 9, .. })
        ));
        assert!(matches!(
            PowerPath::new(1, vec![0, 0]).verify(&t),
            Err(VerifyError::Duplicate { first: 0, second: 1, .. })
        ));
        assert_eq!(PowerPath::new(0, vec![0]).verify(&t), Err(VerifyError::InvalidPower));
    }

    #[test]
    fn prefix_truncation() {
        let t = Tournament::transitive(6).unwrap();
        let p = PowerPath::new(2, vec![0, 1, 2, 5, 3, 4]);
        assert_eq!(p.longest_valid_prefix(&t).vertices, vec![0, 1, 2, 5]);
        let q = PowerPath::new(2, vec![0, 1, 1]);
        assert_eq!(q.longest_valid_prefix(&t).vertices, vec![0, 1]);
    }

    #[test]
    fn witness_json_shape() {
        let p = PowerPath::new(2, vec![0, 3, 1]);
        assert_eq!(p.to_json(), r#"{"k":2,"vertices":[0,3,1]}"#);
        assert_eq!(PowerPath::from_json(&p.to_json()).unwrap(), p);
    }
}
