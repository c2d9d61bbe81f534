//! The lower-bound constructions: complete bipartite splits, `G(n, p)`, the
//! split with an extra edge, and the blow-up of a tame graph.
//!
//! All structured constructions are blow-ups: a few groups of vertices, each
//! a clique or independent set, with complete or empty connections between
//! groups. Their induced densities are computed exactly from group
//! compositions, without scanning subsets, so hosts may have far more than
//! 64 vertices.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::density::{induced_density_with_budget, InducedMatcher, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::exact::{binomial, from_biguint, ser_opt_rational, Rational};
use crate::graph::{Graph, SparseGraph, VertexSet, MAX_VERTICES};
use crate::structure::is_tamed_by;

/// Hosts with more edges than this are not materialized.
pub const CONSTRUCTION_EDGE_LIMIT: u64 = 5_000_000;

/// Cap on group compositions examined for an exact blow-up density.
const COMPOSITION_BUDGET: u64 = 2_000_000;

/// Groups of twins: `sizes[i]` vertices, a clique when `cliques[i]`, and
/// complete to group `j` exactly when `links[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowUp {
    pub sizes: Vec<usize>,
    pub cliques: Vec<bool>,
    pub links: Vec<Vec<bool>>,
}

impl BlowUp {
    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn edge_count(&self) -> u64 {
        let g = self.sizes.len();
        let mut m = 0u64;
        for i in 0..g {
            let a = self.sizes[i] as u64;
            if self.cliques[i] {
                m += a * a.saturating_sub(1) / 2;
            }
            for j in i + 1..g {
                if self.links[i][j] {
                    m += a * self.sizes[j] as u64;
                }
            }
        }
        m
    }

    fn offsets(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect()
    }

    fn edges_of(&self, sizes: &[usize]) -> Vec<(usize, usize)> {
        let mut start = 0;
        let offsets: Vec<usize> = sizes
            .iter()
            .map(|&s| {
                let o = start;
                start += s;
                o
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..sizes.len() {
            let range_i = offsets[i]..offsets[i] + sizes[i];
            if self.cliques[i] {
                for u in range_i.clone() {
                    for v in u + 1..range_i.end {
                        edges.push((u, v));
                    }
                }
            }
            for j in i + 1..sizes.len() {
                if self.links[i][j] {
                    for u in range_i.clone() {
                        for v in offsets[j]..offsets[j] + sizes[j] {
                            edges.push((u, v));
                        }
                    }
                }
            }
        }
        edges
    }

    /// The host graph; groups occupy consecutive vertex ranges.
    pub fn to_sparse(&self) -> Result<SparseGraph> {
        let m = self.edge_count();
        if m > CONSTRUCTION_EDGE_LIMIT {
            return Err(Error::unsupported("edges in a constructed host", CONSTRUCTION_EDGE_LIMIT as u128, m as u128));
        }
        SparseGraph::from_edges(self.n(), &self.edges_of(&self.sizes))
    }

    /// Group ranges `[start, start + size)` in vertex order.
    pub fn ranges(&self) -> Vec<(usize, usize)> {
        self.offsets().into_iter().zip(self.sizes.iter().copied()).collect()
    }

    /// Exact `d(h; host)` by summing over how many vertices each group
    /// contributes. `None` when `h` is too large to compare or the number of
    /// compositions exceeds the budget.
    pub fn induced_density(&self, h: &Graph) -> Result<Option<Rational>> {
        let k = h.n();
        let n = self.n();
        if k > n {
            return Err(Error::input(format!("target has {k} vertices, host only {n}")));
        }
        let mut count = BigUint::zero();
        let mut visited = 0u64;
        let matcher = InducedMatcher::new(h);
        let mut parts = vec![0usize; self.sizes.len()];
        let done = self.compose(0, k, &mut parts, &mut |parts| {
            visited += 1;
            if visited > COMPOSITION_BUDGET {
                return false;
            }
            let sub = Graph::from_edges(k, &self.edges_of(parts)).expect("composition fits");
            if matcher.matches_rows(sub.rows()) {
                count += parts
                    .iter()
                    .zip(&self.sizes)
                    .map(|(&c, &s)| binomial(s as u64, c as u64))
                    .product::<BigUint>();
            }
            true
        });
        Ok(done.then(|| from_biguint(&count, &binomial(n as u64, k as u64))))
    }

    fn compose(&self, i: usize, left: usize, parts: &mut [usize], f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if i == parts.len() {
            return left > 0 || f(parts);
        }
        let room: usize = self.sizes[i + 1..].iter().sum();
        let lo = left.saturating_sub(room);
        for c in lo..=left.min(self.sizes[i]) {
            parts[i] = c;
            if !self.compose(i + 1, left - c, parts, f) {
                return false;
            }
        }
        parts[i] = 0;
        true
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstructionReport {
    pub graph: SparseGraph,
    pub target: SparseGraph,
    /// Probability of the event the construction is designed around (for
    /// `G(n, p)`, the realized density of the sample).
    #[serde(serialize_with = "ser_opt_rational")]
    pub achieved: Option<Rational>,
    /// Full induced density of the target in the host, when computable.
    #[serde(serialize_with = "ser_opt_rational")]
    pub density: Option<Rational>,
    pub limit_formula: f64,
    pub sigma: Option<f64>,
    /// Part sizes for blow-up constructions.
    pub parts: Option<Vec<usize>>,
    pub seed: Option<u64>,
}

fn choose_f64(n: u64, k: u64) -> f64 {
    binomial(n, k).to_f64().unwrap_or(f64::INFINITY)
}

fn ratio_big(num: BigUint, n: usize, k: usize) -> Rational {
    from_biguint(&num, &binomial(n as u64, k as u64))
}

fn blowup_density(b: &BlowUp, target: &SparseGraph) -> Result<Option<Rational>> {
    match target.to_graph() {
        Ok(h) => b.induced_density(&h),
        Err(_) => Ok(None),
    }
}

fn two_part(a: usize, b: usize, clique_a: bool) -> BlowUp {
    BlowUp {
        sizes: vec![a, b],
        cliques: vec![clique_a, false],
        links: vec![vec![false, true], vec![true, false]],
    }
}

fn complete_bipartite_sparse(a: usize, b: usize) -> Result<SparseGraph> {
    two_part(a, b, false).to_sparse()
}

/// `C(k, r) σ^r (1 - σ)^(k - r)`.
pub fn split_limit(k: u64, r: u64, sigma: f64) -> f64 {
    choose_f64(k, r) * sigma.powi(r as i32) * (1.0 - sigma).powi((k - r) as i32)
}

/// Complete bipartite host with parts `round(σn)` and the rest, aimed at
/// `K_{r, k-r}`. The achieved value is the probability that a random
/// `k`-set takes exactly `r` vertices from the small part.
pub fn split_construction(k: usize, r: usize, n: usize, sigma: f64) -> Result<ConstructionReport> {
    if !(1 <= r && r < k && k <= n) {
        return Err(Error::input(format!("need 1 <= r < k <= n, got r = {r}, k = {k}, n = {n}")));
    }
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::input(format!("sigma = {sigma} must lie in (0, 1)")));
    }
    let a = (sigma * n as f64).round() as usize;
    if a < r || a >= n {
        return Err(Error::input(format!("part size round(sigma n) = {a} must lie in [r, n) = [{r}, {n})")));
    }
    let blow = two_part(a, n - a, false);
    let target = complete_bipartite_sparse(r, k - r)?;
    let achieved = ratio_big(binomial(a as u64, r as u64) * binomial((n - a) as u64, (k - r) as u64), n, k);
    Ok(ConstructionReport {
        density: blowup_density(&blow, &target)?,
        graph: blow.to_sparse()?,
        target,
        achieved: Some(achieved),
        limit_formula: split_limit(k as u64, r as u64, sigma),
        sigma: Some(sigma),
        parts: Some(blow.sizes),
        seed: None,
    })
}

/// `G(n, p)` with `p = 1 / C(k, 2)`, aimed at one edge plus `k - 2`
/// isolated vertices. Densities are exact when the host fits in 64 vertices.
pub fn gnp_construction(k: usize, n: usize, seed: u64) -> Result<ConstructionReport> {
    if !(2 <= k && k <= n) {
        return Err(Error::input(format!("need 2 <= k <= n, got k = {k}, n = {n}")));
    }
    let pairs = (k * (k - 1) / 2) as u64;
    let p = 1.0 / pairs as f64;
    let expected = (n as f64) * (n as f64 - 1.0) / 2.0 * p;
    if expected > 2.0 * CONSTRUCTION_EDGE_LIMIT as f64 {
        return Err(Error::unsupported("expected edges in a constructed host", CONSTRUCTION_EDGE_LIMIT as u128, expected as u128));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    let graph = SparseGraph::from_edges(n, &edges)?;
    let target = SparseGraph::from_edges(k, &[(0, 1)])?;
    let density = if n <= MAX_VERTICES {
        match induced_density_with_budget(&target.to_graph()?, &graph.to_graph()?, DEFAULT_BUDGET) {
            Ok(d) => Some(d.density),
            Err(Error::Unsupported { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(ConstructionReport {
        graph,
        target,
        achieved: density.clone(),
        density,
        limit_formula: (1.0 - p).powi(pairs as i32 - 1),
        sigma: None,
        parts: None,
        seed: Some(seed),
    })
}

/// Split with parts `round(2n/k)` and the rest, the small part made a
/// clique, aimed at `K_{2, k-2}` plus the edge inside the 2-side.
pub fn split_plus_edge(k: usize, n: usize) -> Result<ConstructionReport> {
    if !(4 <= k && k <= n) {
        return Err(Error::input(format!("need 4 <= k <= n, got k = {k}, n = {n}")));
    }
    let a = (2.0 * n as f64 / k as f64).round() as usize;
    let blow = two_part(a, n - a, true);
    let mut target_edges = vec![(0, 1)];
    target_edges.extend((2..k).flat_map(|v| [(0, v), (1, v)]));
    let target = SparseGraph::from_edges(k, &target_edges)?;
    let achieved = ratio_big(binomial(a as u64, 2) * binomial((n - a) as u64, (k - 2) as u64), n, k);
    let sigma = 2.0 / k as f64;
    Ok(ConstructionReport {
        density: blowup_density(&blow, &target)?,
        graph: blow.to_sparse()?,
        target,
        achieved: Some(achieved),
        limit_formula: split_limit(k as u64, 2, sigma),
        sigma: Some(sigma),
        parts: Some(blow.sizes),
        seed: None,
    })
}

/// `k! / (k - D)! · k^{-D} · (1 - D/k)^{k - D}`: the limit probability that
/// a random `k`-set takes one vertex from each of `D` parts of relative size
/// `1/k` and the rest from the remaining part.
pub fn dtame_limit(k: usize, d: usize) -> f64 {
    let kf = k as f64;
    let falling: f64 = (0..d).map(|i| (k - i) as f64 / kf).product();
    falling * (1.0 - d as f64 / kf).powi((k - d) as i32)
}

/// Blow-up of a tame graph: one independent group of `⌊n/k⌋` vertices per
/// vertex of `v0`, and one group for the rest, a clique exactly when the
/// rest is a clique of size at least 2 in `h`.
pub fn dtame_blowup(h: &Graph, v0: VertexSet, n: usize) -> Result<ConstructionReport> {
    let k = h.n();
    if !is_tamed_by(h, v0)? {
        return Err(Error::precondition(format!("{v0:?} does not tame {h}")));
    }
    if k == 0 || k > n {
        return Err(Error::input(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let tamers = v0.to_vec();
    let d = tamers.len();
    let rest = h.vertices().difference(v0);
    let q = n / k;
    let mut sizes = vec![q; d];
    sizes.push(n - d * q);
    let mut cliques = vec![false; d];
    cliques.push(rest.len() >= 2 && h.is_clique(rest));
    let g = d + 1;
    let mut links = vec![vec![false; g]; g];
    for i in 0..d {
        for j in 0..d {
            links[i][j] = i != j && h.has_edge(tamers[i], tamers[j]);
        }
        let to_rest = !rest.is_empty() && h.neighbors(tamers[i]).intersection(rest) == rest;
        links[i][d] = to_rest;
        links[d][i] = to_rest;
    }
    let blow = BlowUp { sizes, cliques, links };
    let planted = BigUint::from(q).pow(d as u32) * binomial((n - d * q) as u64, (k - d) as u64);
    Ok(ConstructionReport {
        density: blow.induced_density(h)?,
        graph: blow.to_sparse()?,
        target: SparseGraph::from(h),
        achieved: Some(ratio_big(planted, n, k)),
        limit_formula: dtame_limit(k, d),
        sigma: Some(1.0 / k as f64),
        parts: Some(blow.sizes),
        seed: None,
    })
}

impl ConstructionReport {
    /// Whether the full density is at least the designed event probability,
    /// as it must be since the event induces the target.
    pub fn density_dominates(&self) -> Option<bool> {
        Some(self.density.as_ref()? >= self.achieved.as_ref()?)
    }
}
