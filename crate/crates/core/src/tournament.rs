//! Tournaments stored as row bitsets, plus the vertex-set operations the
//! finders are built from.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bitset::{and_count, words_for, BitSet};
use crate::rng::splitmix_at;

/// A subset of the vertices of a host tournament; the universe is the host's
/// vertex count.
pub type VertexSet = BitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TournamentError {
    #[error("tournament size must be positive")]
    InvalidSize,
    #[error("residues do not form an antisymmetric system mod {n}: {reason}")]
    InvalidResidues { n: usize, reason: String },
    #[error("vertex set is empty")]
    EmptySet,
    #[error("invalid bipartite pair: {0}")]
    InvalidPair(&'static str),
    #[error("vertex set universe {got} does not match host size {expected}")]
    HostMismatch { expected: usize, got: usize },
}

/// A complete oriented graph on `0..n`.
///
/// `out` holds one row bitset per vertex (`j` in row `i` iff `i -> j`), `inn`
/// the transposed rows. Both are kept so in- and out-neighbourhoods are
/// equally cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    stride: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Tournament(n={})", self.n)?;
        for i in 0..self.n {
            let row: String = (0..self.n)
                .map(|j| match (i == j, self.has_edge(i, j)) {
                    (true, _) => '-',
                    (false, true) => '1',
                    (false, false) => '0',
                })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// Index of the unordered pair `{i, j}` (`i < j`) in row-major order:
/// (0,1), (0,2), ..., (0,n-1), (1,2), ...
#[inline]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl Tournament {
    /// Build a tournament from a predicate deciding, for every `i < j`,
    /// whether the edge points `i -> j`.
    pub fn from_fn<F: FnMut(usize, usize) -> bool>(
        n: usize,
        mut forward: F,
    ) -> Result<Self, TournamentError> {
        if n == 0 {
            return Err(TournamentError::InvalidSize);
        }
        let stride = words_for(n);
        let mut t = Tournament {
            n,
            stride,
            out: vec![0; n * stride],
            inn: vec![0; n * stride],
        };
        for i in 0..n {
            for j in i + 1..n {
                if forward(i, j) {
                    t.set_arc(i, j);
                } else {
                    t.set_arc(j, i);
                }
            }
        }
        Ok(t)
    }

    #[inline]
    fn set_arc(&mut self, from: usize, to: usize) {
        self.out[from * self.stride + to / 64] |= 1 << (to % 64);
        self.inn[to * self.stride + from / 64] |= 1 << (from % 64);
    }

    #[inline]
    fn clear_arc(&mut self, from: usize, to: usize) {
        self.out[from * self.stride + to / 64] &= !(1 << (to % 64));
        self.inn[to * self.stride + from / 64] &= !(1 << (from % 64));
    }

    /// Bit `pair_index(n, i, j)` of `mask` set means `i -> j` (`i < j`).
    pub fn from_pair_mask(n: usize, mask: u64) -> Result<Self, TournamentError> {
        if n * n.saturating_sub(1) / 2 > 64 {
            return Err(TournamentError::InvalidSize);
        }
        Self::from_fn(n, |i, j| mask >> pair_index(n, i, j) & 1 == 1)
    }

    /// Relabel vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut inv = vec![usize::MAX; self.n];
        for (v, &p) in perm.iter().enumerate() {
            assert!(p < self.n && inv[p] == usize::MAX, "not a permutation");
            inv[p] = v;
        }
        Self::from_fn(self.n, |i, j| self.has_edge(inv[i], inv[j])).expect("same size")
    }

    /// The transitive tournament: `i -> j` iff `i < j`.
    pub fn transitive(n: usize) -> Result<Self, TournamentError> {
        Self::from_fn(n, |_, _| true)
    }

    /// The circulant tournament on `Z_n` with connection set `residues`:
    /// `i -> j` iff `(j - i) mod n` is a residue.
    pub fn rotational(n: usize, residues: &BTreeSet<usize>) -> Result<Self, TournamentError> {
        let bad = |reason: String| TournamentError::InvalidResidues { n, reason };
        if n == 0 {
            return Err(TournamentError::InvalidSize);
        }
        if n % 2 == 0 {
            return Err(bad("n must be odd".into()));
        }
        if residues.len() != (n - 1) / 2 {
            return Err(bad(format!(
                "expected {} residues, got {}",
                (n - 1) / 2,
                residues.len()
            )));
        }
        for &r in residues {
            if r == 0 || r >= n {
                return Err(bad(format!("residue {r} not in 1..{n}")));
            }
            if residues.contains(&(n - r)) {
                return Err(bad(format!("both {r} and {} present", n - r)));
            }
        }
        Self::from_fn(n, |i, j| residues.contains(&(j - i)))
    }

    /// Uniform random tournament. Pair number `p` (see [`pair_index`]) points
    /// forward iff the top bit of SplitMix64 output `p` of `seed` is set.
    pub fn random(n: usize, seed: u64) -> Result<Self, TournamentError> {
        Self::from_fn(n, |i, j| {
            splitmix_at(seed, pair_index(n, i, j) as u64) >> 63 == 1
        })
    }

    /// Replace every vertex by a transitive block of `m` clones; blocks
    /// inherit the orientation between their originals.
    pub fn blow_up(&self, m: usize) -> Result<Self, TournamentError> {
        if m == 0 {
            return Err(TournamentError::InvalidSize);
        }
        Self::from_fn(self.n * m, |i, j| {
            let (bi, bj) = (i / m, j / m);
            if bi == bj {
                true
            } else {
                self.has_edge(bi, bj)
            }
        })
    }

    /// Every edge reversed.
    pub fn reversed(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.has_edge(j, i)).expect("n > 0")
    }

    /// Reverse the orientation of the pair `{i, j}` in place.
    pub fn flip(&mut self, i: usize, j: usize) {
        assert!(i != j && i < self.n && j < self.n);
        if self.has_edge(i, j) {
            self.clear_arc(i, j);
            self.set_arc(j, i);
        } else {
            self.clear_arc(j, i);
            self.set_arc(i, j);
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Words per row.
    #[inline]
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.out[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn out_row(&self, i: usize) -> &[u64] {
        &self.out[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn in_row(&self, i: usize) -> &[u64] {
        &self.inn[i * self.stride..(i + 1) * self.stride]
    }

    pub fn out_neighbors(&self, i: usize) -> VertexSet {
        BitSet::from_words(self.out_row(i).to_vec(), self.n)
    }

    pub fn in_neighbors(&self, i: usize) -> VertexSet {
        BitSet::from_words(self.in_row(i).to_vec(), self.n)
    }

    #[inline]
    pub fn out_degree(&self, i: usize) -> usize {
        self.out_row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.out_degree(i)).collect()
    }

    pub fn empty_set(&self) -> VertexSet {
        BitSet::new(self.n)
    }

    pub fn all_vertices(&self) -> VertexSet {
        BitSet::full(self.n)
    }

    pub fn vertex_set<I: IntoIterator<Item = usize>>(&self, it: I) -> VertexSet {
        BitSet::from_indices(self.n, it)
    }

    fn check_host(&self, s: &VertexSet) -> Result<(), TournamentError> {
        if s.universe() != self.n {
            return Err(TournamentError::HostMismatch {
                expected: self.n,
                got: s.universe(),
            });
        }
        Ok(())
    }

    /// `∩_{x ∈ s} N⁺(x)`. Members of `s` are not removed explicitly (none of
    /// them can survive anyway, since no vertex is its own out-neighbour).
    pub fn common_out_neighborhood(&self, s: &VertexSet) -> Result<VertexSet, TournamentError> {
        self.check_host(s)?;
        let mut it = s.iter();
        let first = it.next().ok_or(TournamentError::EmptySet)?;
        let mut acc = self.out_neighbors(first);
        for x in it {
            acc.intersect_with(self.out_row(x));
        }
        Ok(acc)
    }

    /// Number of edges `x -> y` with `x ∈ a`, `y ∈ b`.
    pub fn edge_count(&self, a: &VertexSet, b: &VertexSet) -> u64 {
        a.iter().map(|x| b.count_and(self.out_row(x)) as u64).sum()
    }

    /// `e(a -> b) / (|a| |b|)`.
    pub fn directed_density(&self, a: &VertexSet, b: &VertexSet) -> Result<f64, TournamentError> {
        let pair = BipartitePair::new(self, a.clone(), b.clone())?;
        Ok(pair.d_ab())
    }

    /// The subtournament on `s`, relabelled `0..|s|` in increasing order of
    /// the original labels.
    pub fn induced(&self, s: &VertexSet) -> Result<(Tournament, Relabel), TournamentError> {
        self.check_host(s)?;
        let to_host = s.to_vec();
        if to_host.is_empty() {
            return Err(TournamentError::EmptySet);
        }
        let sub = Tournament::from_fn(to_host.len(), |i, j| self.has_edge(to_host[i], to_host[j]))?;
        Ok((sub, Relabel { to_host }))
    }

    /// Full scan of the tournament axioms; used by tests and the reader.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut arcs = 0usize;
        for i in 0..self.n {
            if self.has_edge(i, i) {
                return Err(format!("loop at {i}"));
            }
            for j in 0..self.n {
                if i != j && self.has_edge(i, j) == self.has_edge(j, i) {
                    return Err(format!("pair ({i},{j}) not oriented exactly once"));
                }
                if self.has_edge(i, j) != (self.in_row(j)[i / 64] >> (i % 64) & 1 == 1) {
                    return Err(format!("in/out rows disagree on ({i},{j})"));
                }
            }
            arcs += self.out_degree(i);
        }
        if arcs != self.n * (self.n - 1) / 2 {
            return Err(format!("arc count {arcs}"));
        }
        Ok(())
    }

    /// Raw adjacency bits, row-major over pairs (see [`pair_index`]); bit set
    /// means the lower label points to the higher one.
    pub fn pair_bits(&self) -> Vec<bool> {
        let mut bits = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in i + 1..self.n {
                bits.push(self.has_edge(i, j));
            }
        }
        bits
    }
}

/// Map from the labels of an induced subtournament back to the host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabel {
    pub to_host: Vec<usize>,
}

impl Relabel {
    pub fn identity(n: usize) -> Self {
        Relabel {
            to_host: (0..n).collect(),
        }
    }

    #[inline]
    pub fn lift(&self, v: usize) -> usize {
        self.to_host[v]
    }

    pub fn lift_all(&self, vs: &[usize]) -> Vec<usize> {
        vs.iter().map(|&v| self.to_host[v]).collect()
    }

    /// Compose: `self` maps into an intermediate tournament that `outer`
    /// maps into the final host.
    pub fn then(&self, outer: &Relabel) -> Relabel {
        Relabel {
            to_host: self.to_host.iter().map(|&v| outer.to_host[v]).collect(),
        }
    }
}

/// Two disjoint vertex sets of a host tournament together with the exact
/// number of cross edges in each direction. Sizes need not be equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitePair {
    pub a: VertexSet,
    pub b: VertexSet,
    size_a: usize,
    size_b: usize,
    edges_ab: u64,
    edges_ba: u64,
}

impl BipartitePair {
    pub fn new(t: &Tournament, a: VertexSet, b: VertexSet) -> Result<Self, TournamentError> {
        t.check_host(&a)?;
        t.check_host(&b)?;
        if a.is_empty() || b.is_empty() {
            return Err(TournamentError::InvalidPair("empty side"));
        }
        if !a.is_disjoint(&b) {
            return Err(TournamentError::InvalidPair("sides overlap"));
        }
        let edges_ab = t.edge_count(&a, &b);
        let size_a = a.count();
        let size_b = b.count();
        let edges_ba = (size_a * size_b) as u64 - edges_ab;
        Ok(BipartitePair {
            a,
            b,
            size_a,
            size_b,
            edges_ab,
            edges_ba,
        })
    }

    /// The same pair viewed from the other side.
    pub fn swapped(&self) -> Self {
        BipartitePair {
            a: self.b.clone(),
            b: self.a.clone(),
            size_a: self.size_b,
            size_b: self.size_a,
            edges_ab: self.edges_ba,
            edges_ba: self.edges_ab,
        }
    }

    #[inline]
    pub fn size_a(&self) -> usize {
        self.size_a
    }

    #[inline]
    pub fn size_b(&self) -> usize {
        self.size_b
    }

    #[inline]
    pub fn edges_ab(&self) -> u64 {
        self.edges_ab
    }

    #[inline]
    pub fn edges_ba(&self) -> u64 {
        self.edges_ba
    }

    #[inline]
    pub fn cross_pairs(&self) -> u64 {
        (self.size_a * self.size_b) as u64
    }

    pub fn d_ab(&self) -> f64 {
        self.edges_ab as f64 / self.cross_pairs() as f64
    }

    pub fn d_ba(&self) -> f64 {
        self.edges_ba as f64 / self.cross_pairs() as f64
    }
}

/// Count of `row ∩ set`, exposed for callers holding raw rows.
#[inline]
pub fn row_count_in(row: &[u64], set: &VertexSet) -> usize {
    and_count(row, set.words())
}
