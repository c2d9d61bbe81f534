//! Simple undirected graphs on at most 64 vertices.
//!
//! Row `v` of the adjacency is the neighbor bitset of `v`. All values are
//! immutable once built by the public constructors; the mutating helpers are
//! only used while assembling a graph.

mod canon;
mod graph6;
mod sparse;
mod vertex_set;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub(crate) use canon::{canonical_code_of_rows, canonical_leaf};
pub use canon::{automorphism_count, canonical_code, canonical_form, canonical_labeling, CanonicalCode, AUT_EXACT_LIMIT};
pub use graph6::{parse_graph6, to_graph6};
pub use sparse::{SparseGraph, SPARSE_MAX_VERTICES};
pub use vertex_set::{VertexIter, VertexSet};

pub const MAX_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graphs are limited to {MAX_VERTICES} vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn null() -> Self {
        Graph::empty(0)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        let all = VertexSet::full(n).bits();
        for v in 0..n {
            g.adj[v] = all & !(1u64 << v);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::unsupported("vertex count", MAX_VERTICES as u128, n as u128));
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u},{v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw neighbor rows, validating symmetry and loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(Error::unsupported("vertex count", MAX_VERTICES as u128, n as u128));
        }
        let mask = VertexSet::full(n).bits();
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::input(format!("row {v} has bits beyond n = {n}")));
            }
            if (row >> v) & 1 == 1 {
                return Err(Error::input(format!("self-loop at {v}")));
            }
            for u in VertexSet::from_bits(row) {
                if (rows[u] >> v) & 1 == 0 {
                    return Err(Error::input(format!("asymmetric adjacency at ({v},{u})")));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(Graph::from_rows(rows.clone()).is_ok());
        Graph { n: rows.len(), adj: rows }
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(0, n - 1);
        }
        g
    }

    /// `K_{a,b}` with the `a`-side on vertices `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Graph::complete_bipartite(1, leaves)
    }

    /// Disjoint union; `other` is relabeled to follow `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let n = self.n + other.n;
        assert!(n <= MAX_VERTICES, "disjoint union exceeds {MAX_VERTICES} vertices");
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&row| row << self.n));
        Graph { n, adj }
    }

    /// Appends `count` isolated vertices.
    pub fn with_isolated(&self, count: usize) -> Self {
        self.disjoint_union(&Graph::empty(count))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_bits(self.adj[v])
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u] >> v) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Number of neighbors of `v` inside `w`.
    #[inline]
    pub fn degree_into(&self, v: usize, w: VertexSet) -> usize {
        (self.adj[v] & w.bits()).count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet::from_bits(self.adj[u] & !((1u64 << u) | ((1u64 << u) - 1)))
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
    }

    pub(crate) fn toggle_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] ^= 1u64 << v;
        self.adj[v] ^= 1u64 << u;
    }

    /// Returns a copy with the pair `{u, v}` flipped.
    pub fn with_edge_toggled(&self, u: usize, v: usize) -> Result<Self> {
        if u >= self.n || v >= self.n || u == v {
            return Err(Error::input(format!("invalid vertex pair ({u},{v})")));
        }
        let mut g = self.clone();
        g.toggle_edge(u, v);
        Ok(g)
    }

    pub fn complement(&self) -> Self {
        let all = VertexSet::full(self.n).bits();
        let adj = (0..self.n).map(|v| !self.adj[v] & all & !(1u64 << v)).collect();
        Graph { n: self.n, adj }
    }

    /// Induced subgraph on `w`, relabeled in increasing vertex order.
    pub fn induced_subgraph(&self, w: VertexSet) -> Result<Self> {
        if !w.is_subset(self.vertices()) {
            let bad = w.difference(self.vertices()).iter().next().unwrap_or(0);
            return Err(Error::input(format!("vertex {bad} out of range for n = {}", self.n)));
        }
        Ok(self.induced(w))
    }

    pub(crate) fn induced(&self, w: VertexSet) -> Self {
        let mut rows = Vec::with_capacity(w.len());
        induced_rows_into(&self.adj, w, &mut rows);
        Graph { n: rows.len(), adj: rows }
    }

    /// Relabels so that old vertex `perm[i]` becomes new vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n || perm.iter().any(|&v| v >= self.n) || perm.iter().copied().collect::<VertexSet>().len() != self.n {
            return Err(Error::input("not a permutation of the vertex set"));
        }
        let mut pos = vec![0usize; self.n];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        let adj = perm
            .iter()
            .map(|&old| {
                VertexSet::from_bits(self.adj[old])
                    .iter()
                    .fold(0u64, |row, u| row | (1u64 << pos[u]))
            })
            .collect();
        Ok(Graph { n: self.n, adj })
    }

    pub fn non_isolated(&self) -> VertexSet {
        self.adj
            .iter()
            .enumerate()
            .filter(|(_, &row)| row != 0)
            .map(|(v, _)| v)
            .collect()
    }

    /// `M(G)`: the subgraph induced on non-isolated vertices.
    pub fn non_isolated_core(&self) -> Self {
        self.induced(self.non_isolated())
    }

    pub fn is_clique(&self, w: VertexSet) -> bool {
        w.iter().all(|v| self.adj[v] & w.bits() == w.bits() & !(1u64 << v))
    }

    pub fn is_stable(&self, w: VertexSet) -> bool {
        w.iter().all(|v| self.adj[v] & w.bits() == 0)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::from_degrees((0..self.n).map(|v| self.degree(v)).collect())
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        canonical_code(self)
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        is_isomorphic(self, other)
    }

    pub fn to_graph6(&self) -> String {
        to_graph6(self)
    }
}

/// Writes the rows of `G[w]` (order-preserving relabeling) into `out`.
#[inline]
pub(crate) fn induced_rows_into(adj: &[u64], w: VertexSet, out: &mut Vec<u64>) {
    out.clear();
    let wb = w.bits();
    for v in w {
        out.push(compress_bits(adj[v] & wb, wb));
    }
}

/// Packs the bits of `x` selected by `mask` into the low bits (software pext).
#[inline]
pub(crate) fn compress_bits(x: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    let mut i = 0;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if x & low != 0 {
            out |= 1u64 << i;
        }
        i += 1;
        m ^= low;
    }
    out
}

pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    if g1.n != g2.n || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let mut d1 = g1.degree_profile().degrees;
    let mut d2 = g2.degree_profile().degrees;
    d1.sort_unstable();
    d2.sort_unstable();
    d1 == d2 && canonical_code(g1) == canonical_code(g2)
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_graph6(self))
    }
}

impl std::str::FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph6(s)
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_graph6(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_graph6(&s).map_err(serde::de::Error::custom)
    }
}

/// Degree statistics: `Δ`, `ℓ`, `m`, `m₁`, `m_{≥2}` and the multiplicities `k_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub max_degree: usize,
    pub edge_count: usize,
    /// Non-isolated vertices.
    pub m: usize,
    pub m1: usize,
    pub m_ge2: usize,
    /// degree -> number of vertices with that degree
    pub k_hist: BTreeMap<usize, usize>,
}

impl DegreeProfile {
    pub fn from_degrees(degrees: Vec<usize>) -> Self {
        let mut k_hist = BTreeMap::new();
        for &d in &degrees {
            *k_hist.entry(d).or_insert(0) += 1;
        }
        let m1 = degrees.iter().filter(|&&d| d == 1).count();
        let m_ge2 = degrees.iter().filter(|&&d| d >= 2).count();
        DegreeProfile {
            max_degree: degrees.iter().copied().max().unwrap_or(0),
            edge_count: degrees.iter().sum::<usize>() / 2,
            m: m1 + m_ge2,
            m1,
            m_ge2,
            degrees,
            k_hist,
        }
    }
}
