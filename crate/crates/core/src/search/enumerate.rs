//! One graph per isomorphism class, by canonical augmentation.
//!
//! A child on `n` vertices is kept only when deleting its canonically last
//! vertex gives back the parent it was grown from. Every class then has
//! exactly one parent class, and duplicates from the same parent are removed
//! by canonical code.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{canonical_code_of_rows, canonical_leaf, CanonicalCode, Graph, VertexSet};
use crate::stats::par_map;

/// Largest order [`enumerate_graphs`] supports.
pub const ENUMERATION_LIMIT: usize = 9;

/// Orders at or below this are enumerated by brute force and deduplicated.
const BRUTE_FORCE_LIMIT: usize = 5;

pub(crate) struct Level {
    pub graphs: Vec<Graph>,
    pub codes: Vec<CanonicalCode>,
}

static LEVELS: [OnceLock<Level>; ENUMERATION_LIMIT + 1] = [const { OnceLock::new() }; ENUMERATION_LIMIT + 1];

/// Canonical forms of all graphs on `n` vertices, sorted by canonical code.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(level(n)?.graphs.clone())
}

/// Number of isomorphism classes on `n` vertices.
pub fn count_graphs(n: usize) -> Result<usize> {
    Ok(level(n)?.graphs.len())
}

pub(crate) fn level(n: usize) -> Result<&'static Level> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::unsupported("vertex count for enumeration", ENUMERATION_LIMIT as u128, n as u128));
    }
    Ok(LEVELS[n].get_or_init(|| build(n)))
}

fn build(n: usize) -> Level {
    let mut found: Vec<(CanonicalCode, Vec<u64>)> = if n <= BRUTE_FORCE_LIMIT {
        brute_force(n)
    } else {
        let parents = level(n - 1).expect("below the limit");
        par_map(parents.graphs.len(), |i| children(&parents.graphs[i], &parents.codes[i]))
            .into_iter()
            .flatten()
            .collect()
    };
    found.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    let (codes, graphs) = found
        .into_iter()
        .map(|(code, rows)| (code, Graph::from_rows_unchecked(rows)))
        .unzip();
    Level { graphs, codes }
}

fn brute_force(n: usize) -> Vec<(CanonicalCode, Vec<u64>)> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut rows = vec![0u64; n];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
        let (_, canon) = canonical_leaf(&rows);
        let code = canonical_code_of_rows(&canon);
        if seen.insert(code.clone()) {
            out.push((code, canon));
        }
    }
    out
}

fn children(parent: &Graph, parent_code: &CanonicalCode) -> Vec<(CanonicalCode, Vec<u64>)> {
    let m = parent.n();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(m + 1);
    let mut rest = Vec::with_capacity(m);
    for s in 0u64..1 << m {
        rows.clear();
        rows.extend(parent.rows().iter().enumerate().map(|(v, &r)| r | (s >> v & 1) << m));
        rows.push(s);
        let (perm, canon) = canonical_leaf(&rows);
        let code = CanonicalCode::from_rows(&canon);
        if !seen.insert(code.clone()) {
            continue;
        }
        let last = perm[m];
        crate::graph::induced_rows_into(&rows, VertexSet::full(m + 1).difference(VertexSet::singleton(last)), &mut rest);
        if canonical_code_of_rows(&rest) == *parent_code {
            out.push((code, canon));
        }
    }
    out
}
