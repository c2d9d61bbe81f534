//! Induced copy counts and induced densities `d(H; G)`.

use std::collections::HashSet;

use num_bigint::BigUint;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, from_biguint, ser_biguint, ser_rational, Rational};
use crate::graph::{canonical_code_of_rows, induced_rows_into, CanonicalCode, Graph, VertexSet};
use crate::stats::{mc_count, par_map, McEstimate};

/// Default cap on the number of `k`-subsets examined by exact counting.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Targets up to this size are matched through a table of all labeled copies.
const LABELED_TABLE_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityResult {
    #[serde(serialize_with = "ser_biguint")]
    pub copies: BigUint,
    #[serde(serialize_with = "ser_biguint")]
    pub total: BigUint,
    #[serde(serialize_with = "ser_rational")]
    pub density: Rational,
}

/// Upper triangle of a graph on `rows.len() <= 11` vertices packed row by row.
fn pack(rows: &[u64]) -> u64 {
    let k = rows.len();
    let mut out = 0u64;
    let mut off = 0;
    for (i, &r) in rows.iter().enumerate() {
        out |= (r >> (i + 1)) << off;
        off += k - 1 - i;
    }
    out
}

/// Precomputed matcher for induced copies of one target graph.
pub struct InducedMatcher {
    k: usize,
    edges: u32,
    degrees: Vec<u32>,
    code: CanonicalCode,
    labeled: Option<HashSet<u64>>,
}

impl InducedMatcher {
    pub fn new(h: &Graph) -> Self {
        let k = h.n();
        let mut degrees: Vec<u32> = (0..k).map(|v| h.degree(v) as u32).collect();
        degrees.sort_unstable();
        let labeled = (k <= LABELED_TABLE_LIMIT).then(|| {
            let mut set = HashSet::new();
            let mut perm: Vec<usize> = (0..k).collect();
            permute_all(&mut perm, 0, &mut |p| {
                set.insert(pack(h.permuted(p).expect("valid permutation").rows()));
            });
            set
        });
        InducedMatcher {
            k,
            edges: h.edge_count() as u32,
            degrees,
            code: h.canonical_code(),
            labeled,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Whether the graph with these rows is isomorphic to the target.
    pub fn matches_rows(&self, rows: &[u64]) -> bool {
        if rows.len() != self.k {
            return false;
        }
        if let Some(table) = &self.labeled {
            return table.contains(&pack(rows));
        }
        let edges: u32 = rows.iter().map(|r| r.count_ones()).sum::<u32>() / 2;
        if edges != self.edges {
            return false;
        }
        let mut deg: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
        deg.sort_unstable();
        deg == self.degrees && canonical_code_of_rows(rows) == self.code
    }

    /// Whether `g[w]` is isomorphic to the target.
    pub fn matches_subset(&self, adj: &[u64], w: VertexSet, buf: &mut Vec<u64>) -> bool {
        induced_rows_into(adj, w, buf);
        self.matches_rows(buf)
    }

    /// Number of `k`-subsets of the graph that contain `required` and avoid
    /// `forbidden`, and induce the target.
    pub fn count_with(&self, adj: &[u64], required: VertexSet, forbidden: VertexSet) -> u64 {
        let n = adj.len();
        let k = self.k;
        if required.len() > k {
            return 0;
        }
        let internal = required.iter().map(|v| (adj[v] & required.bits()).count_ones()).sum::<u32>() / 2;
        let max_edges = self.edges;
        let max_non_edges = (k * k.saturating_sub(1) / 2) as u32 - self.edges;
        let free: Vec<usize> = (0..n)
            .filter(|&v| !required.contains(v) && !forbidden.contains(v))
            .collect();
        let mut st = Dfs {
            adj,
            free: &free,
            k,
            max_edges,
            max_non_edges,
            matcher: self,
            buf: Vec::with_capacity(k),
        };
        let size = required.len();
        let non_edges = (size * size.saturating_sub(1) / 2) as u32 - internal;
        if internal > max_edges || non_edges > max_non_edges {
            return 0;
        }
        st.go(0, required.bits(), size, internal, non_edges)
    }
}

fn permute_all(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute_all(p, k + 1, f);
        p.swap(k, i);
    }
}

struct Dfs<'a> {
    adj: &'a [u64],
    free: &'a [usize],
    k: usize,
    max_edges: u32,
    max_non_edges: u32,
    matcher: &'a InducedMatcher,
    buf: Vec<u64>,
}

impl Dfs<'_> {
    fn go(&mut self, start: usize, chosen: u64, size: usize, edges: u32, non_edges: u32) -> u64 {
        if size == self.k {
            return u64::from(self.matcher.matches_subset(self.adj, VertexSet::from_bits(chosen), &mut self.buf));
        }
        let need = self.k - size;
        if self.free.len() < need {
            return 0;
        }
        let mut total = 0;
        for i in start..=self.free.len() - need {
            let v = self.free[i];
            let e = (self.adj[v] & chosen).count_ones();
            let (ne, nn) = (edges + e, non_edges + size as u32 - e);
            if ne > self.max_edges || nn > self.max_non_edges {
                continue;
            }
            total += self.go(i + 1, chosen | 1u64 << v, size + 1, ne, nn);
        }
        total
    }
}

fn check_sizes(h: &Graph, g: &Graph) -> Result<()> {
    if h.n() > g.n() {
        return Err(Error::input(format!("target has {} vertices, host only {}", h.n(), g.n())));
    }
    Ok(())
}

/// Exact number of `k`-subsets of `g` inducing a copy of `h`.
pub fn count_induced_with_budget(h: &Graph, g: &Graph, budget: u64) -> Result<BigUint> {
    check_sizes(h, g)?;
    let (n, k) = (g.n() as u64, h.n() as u64);
    let total = binomial(n, k);
    if total > BigUint::from(budget) {
        return Err(Error::Unsupported {
            what: "subset count for exact density",
            limit: budget as u128,
            got: u128::try_from(&total).unwrap_or(u128::MAX),
        });
    }
    let matcher = InducedMatcher::new(h);
    if k == 0 {
        return Ok(BigUint::from(1u32));
    }
    let adj = g.rows();
    // split on the smallest chosen vertex
    let parts = par_map(g.n(), |first| {
        let below = VertexSet::full(first);
        matcher.count_with(adj, VertexSet::singleton(first), below)
    });
    Ok(BigUint::from(parts.into_iter().sum::<u64>()))
}

pub fn count_induced(h: &Graph, g: &Graph) -> Result<BigUint> {
    count_induced_with_budget(h, g, DEFAULT_BUDGET)
}

pub fn induced_density_with_budget(h: &Graph, g: &Graph, budget: u64) -> Result<DensityResult> {
    let copies = count_induced_with_budget(h, g, budget)?;
    let total = binomial(g.n() as u64, h.n() as u64);
    Ok(DensityResult {
        density: from_biguint(&copies, &total),
        copies,
        total,
    })
}

pub fn induced_density(h: &Graph, g: &Graph) -> Result<DensityResult> {
    induced_density_with_budget(h, g, DEFAULT_BUDGET)
}

/// Uniform `k`-subset of `0..n` by a partial Fisher-Yates shuffle.
pub(crate) fn random_subset<R: Rng>(rng: &mut R, n: usize, k: usize, ids: &mut Vec<usize>) -> VertexSet {
    ids.clear();
    ids.extend(0..n);
    for i in 0..k {
        let j = rng.gen_range(i..n);
        ids.swap(i, j);
    }
    ids[..k].iter().copied().collect()
}

pub fn induced_density_mc(h: &Graph, g: &Graph, samples: u64, seed: u64) -> Result<McEstimate> {
    check_sizes(h, g)?;
    if samples == 0 {
        return Err(Error::input("samples must be at least 1"));
    }
    let matcher = InducedMatcher::new(h);
    let (n, k) = (g.n(), h.n());
    let hits = mc_count(samples, seed, |rng| {
        let mut ids = Vec::with_capacity(n);
        let mut buf = Vec::with_capacity(k);
        let w = random_subset(rng, n, k, &mut ids);
        matcher.matches_subset(g.rows(), w, &mut buf)
    });
    Ok(McEstimate::from_counts(hits, samples, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn naive(h: &Graph, g: &Graph) -> u64 {
        let code = h.canonical_code();
        (0u64..1 << g.n())
            .filter(|w| w.count_ones() as usize == h.n())
            .filter(|&w| g.induced(VertexSet::from_bits(w)).canonical_code() == code)
            .count() as u64
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_induced(&Graph::path(3), &Graph::cycle(4)).unwrap(), BigUint::from(4u32));
        assert_eq!(count_induced(&Graph::complete(2), &Graph::complete(4)).unwrap(), BigUint::from(6u32));
        assert_eq!(count_induced(&Graph::complete(3), &Graph::complete_bipartite(3, 3)).unwrap(), BigUint::from(0u32));
        assert!(count_induced(&Graph::path(5), &Graph::path(3)).is_err());
        assert!(matches!(
            count_induced_with_budget(&Graph::path(3), &Graph::cycle(40), 1000),
            Err(Error::Unsupported { .. })
        ));
    }

    #[test]
    fn density_examples() {
        assert_eq!(induced_density(&Graph::path(3), &Graph::cycle(4)).unwrap().density, ratio(1, 1));
        let d = induced_density(&Graph::path(3), &Graph::complete_bipartite(3, 3)).unwrap();
        assert_eq!(d.density, ratio(9, 10));
        assert_eq!(d.total, BigUint::from(20u32));
        assert_eq!(induced_density(&Graph::complete(2), &Graph::complete(7)).unwrap().density, ratio(1, 1));
        assert_eq!(induced_density(&Graph::null(), &Graph::cycle(5)).unwrap().density, ratio(1, 1));
    }

    #[test]
    fn matches_naive_on_mixed_targets() {
        let hosts = [
            Graph::cycle(7),
            Graph::complete_bipartite(3, 4),
            Graph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (1, 6), (7, 2), (7, 4)]).unwrap(),
        ];
        let targets = [Graph::path(3), Graph::path(4), Graph::star(3), Graph::cycle(4), Graph::empty(3), Graph::path(2).with_isolated(2)];
        for g in &hosts {
            for h in &targets {
                assert_eq!(count_induced(h, g).unwrap(), BigUint::from(naive(h, g)), "{h} in {g}");
            }
        }
        // a target above the labeled-table limit goes through canonical codes
        let big = Graph::path(9);
        let host = Graph::cycle(10);
        assert_eq!(count_induced(&big, &host).unwrap(), BigUint::from(naive(&big, &host)));
    }

    #[test]
    fn mc_examples() {
        assert_eq!(induced_density_mc(&Graph::complete(2), &Graph::complete(5), 1000, 7).unwrap().estimate, 1.0);
        let e = induced_density_mc(&Graph::path(3), &Graph::complete_bipartite(3, 3), 100_000, 1).unwrap();
        assert!((e.estimate - 0.9).abs() < 0.01);
        assert_eq!(induced_density_mc(&Graph::complete(3), &Graph::complete_bipartite(3, 3), 100, 2).unwrap().estimate, 0.0);
    }

    #[test]
    fn pack_is_injective_on_small_graphs() {
        let mut seen = HashSet::new();
        for mask in 0u64..64 {
            let mut g = Graph::empty(4);
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    g.add_edge(i, j);
                }
            }
            assert!(seen.insert(pack(g.rows())));
        }
    }
}
