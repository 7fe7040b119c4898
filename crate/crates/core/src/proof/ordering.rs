//! An oriented graph without a path of `k` edges can be ordered so that every
//! vertex has at most `k - 1` in-neighbours among the vertices after it.
//!
//! [`order_or_long_path`] is the constructive version: peel a vertex of small
//! in-degree while one exists; once every remaining vertex has in-degree at
//! least `k`, walk backwards along in-edges, which cannot get stuck before
//! `k` steps.

use rand::Rng;

use super::ProofError;
use crate::bitset::BitSet;
use crate::rng::stream_rng;
use crate::solver::PowerPath;
use crate::tournament::Tournament;

/// A digraph with at most one arc per unordered pair and no loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    out: Vec<BitSet>,
    inn: Vec<BitSet>,
}

impl OrientedGraph {
    pub fn from_arcs<I: IntoIterator<Item = (usize, usize)>>(
        n: usize,
        arcs: I,
    ) -> Result<Self, ProofError> {
        let mut out = vec![BitSet::new(n); n];
        let mut inn = vec![BitSet::new(n); n];
        for (a, b) in arcs {
            if a == b || a >= n || b >= n {
                return Err(ProofError::InvalidVertex(a.max(b)));
            }
            if out[b].contains(a) {
                return Err(ProofError::NotOriented(a, b));
            }
            out[a].insert(b);
            inn[b].insert(a);
        }
        Ok(OrientedGraph { out, inn })
    }

    pub fn from_tournament(t: &Tournament) -> Self {
        OrientedGraph {
            out: (0..t.n()).map(|i| t.out_neighbors(i)).collect(),
            inn: (0..t.n()).map(|i| t.in_neighbors(i)).collect(),
        }
    }

    /// Each unordered pair carries an arc with probability `p`, oriented by a
    /// fair coin.
    pub fn random(n: usize, p: f64, seed: u64) -> Self {
        let mut rng = stream_rng(seed, "oriented-graph");
        let mut arcs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    arcs.push(if rng.gen_bool(0.5) { (i, j) } else { (j, i) });
                }
            }
        }
        Self::from_arcs(n, arcs).expect("one arc per pair")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.out.len()
    }

    #[inline]
    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.out[a].contains(b)
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(BitSet::count).sum()
    }
}

/// An ordering where every vertex has at most `k - 1` in-neighbours after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingCertificate {
    pub order: Vec<usize>,
    pub k: usize,
}

impl OrderingCertificate {
    /// Position of the first vertex violating the back-in-degree bound.
    pub fn check(&self, g: &OrientedGraph) -> Result<(), usize> {
        let n = g.n();
        let mut perm = self.order.clone();
        perm.sort_unstable();
        if perm != (0..n).collect::<Vec<_>>() {
            return Err(0);
        }
        let mut later = BitSet::full(n);
        for (pos, &v) in self.order.iter().enumerate() {
            later.remove(v);
            if later.count_and(g.inn[v].words()) > self.k - 1 {
                return Err(pos);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathOrOrdering {
    /// A directed path (as a first power) with at least `k` edges.
    Path(PowerPath),
    Ordering(OrderingCertificate),
}

impl PathOrOrdering {
    /// Whether the returned object satisfies its own contract in `g`.
    pub fn holds(&self, g: &OrientedGraph, k: usize) -> bool {
        match self {
            PathOrOrdering::Ordering(c) => c.k == k && c.check(g).is_ok(),
            PathOrOrdering::Path(p) => {
                let mut seen = BitSet::new(g.n());
                p.len() > k
                    && p.vertices.iter().all(|&v| {
                        let fresh = !seen.contains(v);
                        seen.insert(v);
                        fresh
                    })
                    && p.vertices.windows(2).all(|w| g.has_arc(w[0], w[1]))
            }
        }
    }
}

/// Peel vertices of in-degree `<= k - 1` (smallest label first). If that
/// succeeds for every vertex the peeling order is the certificate; otherwise
/// every remaining vertex has in-degree `>= k` and a backward walk yields a
/// path with at least `k` edges.
pub fn order_or_long_path(g: &OrientedGraph, k: usize) -> PathOrOrdering {
    assert!(k >= 1, "path length threshold must be positive");
    let n = g.n();
    let mut remaining = BitSet::full(n);
    let mut indeg: Vec<usize> = (0..n).map(|v| g.inn[v].count()).collect();
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = remaining.iter().find(|&v| indeg[v] < k);
        match next {
            Some(v) => {
                remaining.remove(v);
                for w in g.out[v].iter() {
                    if remaining.contains(w) {
                        indeg[w] -= 1;
                    }
                }
                order.push(v);
            }
            None => return PathOrOrdering::Path(backward_walk(g, &remaining)),
        }
    }
    PathOrOrdering::Ordering(OrderingCertificate { order, k })
}

fn backward_walk(g: &OrientedGraph, remaining: &BitSet) -> PowerPath {
    let start = remaining.first().expect("walk starts in a nonempty set");
    let mut free = remaining.clone();
    free.remove(start);
    let mut walk = vec![start];
    let mut cur = start;
    loop {
        let mut preds = g.inn[cur].clone();
        preds.intersect_with(free.words());
        match preds.first() {
            Some(p) => {
                free.remove(p);
                walk.push(p);
                cur = p;
            }
            None => break,
        }
    }
    walk.reverse();
    PowerPath::new(1, walk)
}
