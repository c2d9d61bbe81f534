//! Adjacency-list graphs for orders beyond the bitset limit, used where only
//! degrees and a few neighborhoods are needed (bound selection, large
//! constructions).

use std::fmt;

use serde::{Serialize, Serializer};

use super::graph6::{decode_graph6, encode_graph6};
use super::{DegreeProfile, Graph, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// Largest order expressible with the 18-bit graph6 header.
pub const SPARSE_MAX_VERTICES: usize = (1 << 18) - 1;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseGraph {
    nbrs: Vec<Vec<usize>>,
}

impl SparseGraph {
    pub fn empty(n: usize) -> Self {
        SparseGraph { nbrs: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > SPARSE_MAX_VERTICES {
            return Err(Error::unsupported("vertex count", SPARSE_MAX_VERTICES as u128, n as u128));
        }
        let mut nbrs = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::input(format!("bad edge ({u}, {v}) for n = {n}")));
            }
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
        for row in &mut nbrs {
            row.sort_unstable();
            row.dedup();
        }
        Ok(SparseGraph { nbrs })
    }

    pub fn parse_graph6(text: &str) -> Result<Self> {
        let (n, edges) = decode_graph6(text)?;
        SparseGraph::from_edges(n, &edges)
    }

    pub fn to_graph6(&self) -> String {
        encode_graph6(self.n(), |i, j| self.has_edge(i, j))
    }

    pub fn n(&self) -> usize {
        self.nbrs.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.nbrs[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nbrs
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::from_degrees((0..self.n()).map(|v| self.degree(v)).collect())
    }

    pub fn complement(&self) -> Self {
        let n = self.n();
        let nbrs = (0..n)
            .map(|u| {
                let mut row = Vec::with_capacity(n - 1 - self.degree(u));
                let mut it = self.nbrs[u].iter().peekable();
                for v in 0..n {
                    if it.peek() == Some(&&v) {
                        it.next();
                    } else if v != u {
                        row.push(v);
                    }
                }
                row
            })
            .collect();
        SparseGraph { nbrs }
    }

    /// Subgraph induced on `keep` (sorted, distinct), relabeled in order.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let nbrs = keep
            .iter()
            .map(|&v| self.nbrs[v].iter().filter_map(|&u| (pos[u] != usize::MAX).then_some(pos[u])).collect())
            .collect();
        SparseGraph { nbrs }
    }

    pub fn non_isolated(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.degree(v) > 0).collect()
    }

    /// Converts to a bitset graph when the order allows it.
    pub fn to_graph(&self) -> Result<Graph> {
        if self.n() > MAX_VERTICES {
            return Err(Error::unsupported("vertex count", MAX_VERTICES as u128, self.n() as u128));
        }
        let rows = self
            .nbrs
            .iter()
            .map(|row| row.iter().copied().collect::<VertexSet>().bits())
            .collect();
        Ok(Graph::from_rows_unchecked(rows))
    }
}

impl From<&Graph> for SparseGraph {
    fn from(g: &Graph) -> Self {
        SparseGraph {
            nbrs: (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect(),
        }
    }
}

impl fmt::Debug for SparseGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseGraph(n = {}, m = {})", self.n(), self.edge_count())
    }
}

impl Serialize for SparseGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_graph6())
    }
}
