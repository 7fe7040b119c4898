//! Fingerprints of tournaments up to relabeling.
//!
//! Up to [`CANONICAL_LIMIT`] vertices the fingerprint hashes a canonical
//! code. Vertices are coloured by iterated refinement (out-degree first, then
//! the sorted colours of the out-neighbours) until the partition is stable.
//! Positions are filled class by class in colour order, and inside classes
//! the search picks the arrangement with the lexicographically least code.
//! The code lists, for `q = 1, 2, ...` and `p < q`, whether position `p`
//! beats position `q`. Larger tournaments hash their raw matrix and the
//! fingerprint is flagged as such.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::tournament::Tournament;

pub const CANONICAL_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    /// First 16 hex digits of the SHA-256 of the code.
    pub hex: String,
    /// `false` when the raw matrix was hashed.
    pub canonical: bool,
}

impl fmt::Display for Fingerprint {
    /// `c:<hex>` for canonical fingerprints, `r:<hex>` for raw ones.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", if self.canonical { 'c' } else { 'r' }, self.hex)
    }
}

pub fn canonical_fingerprint(t: &Tournament) -> Fingerprint {
    if t.n() <= CANONICAL_LIMIT {
        Fingerprint {
            hex: hash_code(t.n(), &canonical_code(t)),
            canonical: true,
        }
    } else {
        let identity: Vec<usize> = (0..t.n()).collect();
        Fingerprint {
            hex: hash_code(t.n(), &code_of(t, &identity)),
            canonical: false,
        }
    }
}

fn hash_code(n: usize, code: &[bool]) -> String {
    let mut h = Sha256::new();
    h.update(format!("n={n};").as_bytes());
    h.update(code.iter().map(|&b| if b { b'1' } else { b'0' }).collect::<Vec<u8>>());
    h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Code of the arrangement `order` (position -> vertex).
pub fn code_of(t: &Tournament, order: &[usize]) -> Vec<bool> {
    let mut code = Vec::with_capacity(order.len() * order.len().saturating_sub(1) / 2);
    for q in 1..order.len() {
        for p in 0..q {
            code.push(t.has_edge(order[p], order[q]));
        }
    }
    code
}

/// Stable colouring; colours are ranks of label-independent signatures.
pub fn refine_colors(t: &Tournament) -> Vec<usize> {
    let n = t.n();
    let mut color = ranks(&t.out_degrees());
    let mut classes = class_count(&color);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = t.out_neighbors(v).iter().map(|w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let next = ranks(&sigs);
        let next_classes = class_count(&next);
        color = next;
        if next_classes == classes {
            return color;
        }
        classes = next_classes;
    }
}

fn ranks<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("present")).collect()
}

fn class_count(color: &[usize]) -> usize {
    color.iter().max().map_or(0, |m| m + 1)
}

/// The least code over arrangements that list colour classes in order.
pub fn canonical_code(t: &Tournament) -> Vec<bool> {
    let n = t.n();
    let color = refine_colors(t);
    let mut slots = color.clone();
    slots.sort_unstable();
    let mut s = CanonSearch {
        t,
        color: &color,
        slots: &slots,
        used: vec![false; n],
        order: Vec::with_capacity(n),
        code: Vec::new(),
        best: None,
    };
    s.extend();
    s.best.expect("at least one arrangement")
}

struct CanonSearch<'a> {
    t: &'a Tournament,
    color: &'a [usize],
    slots: &'a [usize],
    used: Vec<bool>,
    order: Vec<usize>,
    code: Vec<bool>,
    best: Option<Vec<bool>>,
}

impl CanonSearch<'_> {
    /// Current code prefix against the same prefix of `best`.
    fn prefix_cmp(&self) -> Ordering {
        match &self.best {
            None => Ordering::Less,
            Some(b) => self.code.as_slice().cmp(&b[..self.code.len()]),
        }
    }

    fn extend(&mut self) {
        let q = self.order.len();
        if q == self.slots.len() {
            if self.prefix_cmp() == Ordering::Less {
                self.best = Some(self.code.clone());
            }
            return;
        }
        for v in 0..self.slots.len() {
            if self.used[v] || self.color[v] != self.slots[q] {
                continue;
            }
            let start = self.code.len();
            for p in 0..q {
                self.code.push(self.t.has_edge(self.order[p], v));
            }
            if self.prefix_cmp() != Ordering::Greater {
                self.used[v] = true;
                self.order.push(v);
                self.extend();
                self.order.pop();
                self.used[v] = false;
            }
            self.code.truncate(start);
        }
    }
}
