//! Canonical labeling by partition refinement and individualization.
//!
//! The ordered partition is refined to an equitable one by neighbor counts.
//! The first non-singleton cell is then individualized vertex by vertex,
//! giving a search tree whose leaves are labelings. The canonical form is the
//! lexicographically smallest relabeled adjacency over all leaves. Subtrees
//! are skipped only when a discovered automorphism maps them onto subtrees
//! already explored, so the result is exact.

use num_bigint::BigUint;

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

/// Exhaustive automorphism counting is guaranteed only up to this size.
pub const AUT_EXACT_LIMIT: usize = 16;

/// Relabeling-invariant byte string; equal iff the graphs are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub(crate) fn from_rows(rows: &[u64]) -> Self {
        let n = rows.len();
        let width = n.div_ceil(8);
        let mut bytes = Vec::with_capacity(1 + n * width);
        bytes.push(n as u8);
        for &row in rows {
            bytes.extend_from_slice(&row.to_le_bytes()[..width]);
        }
        CanonicalCode(bytes)
    }
}

/// Splits cells of `cells` until every cell is equitable with respect to
/// every other cell. Cells split into parts ordered by neighbor count.
fn refine(adj: &[u64], cells: &mut Vec<u64>) {
    let mut buf: Vec<(u32, usize)> = Vec::with_capacity(64);
    let mut s = 0;
    while s < cells.len() {
        let splitter = cells[s];
        let mut split_any = false;
        let mut c = 0;
        while c < cells.len() {
            let cell = cells[c];
            if cell.count_ones() < 2 {
                c += 1;
                continue;
            }
            buf.clear();
            buf.extend(VertexSet::from_bits(cell).iter().map(|v| ((adj[v] & splitter).count_ones(), v)));
            let first = buf[0].0;
            if buf.iter().all(|&(k, _)| k == first) {
                c += 1;
                continue;
            }
            buf.sort_unstable();
            let mut parts = Vec::new();
            let mut cur = 0u64;
            let mut cur_k = buf[0].0;
            for &(k, v) in &buf {
                if k != cur_k {
                    parts.push(cur);
                    cur = 0;
                    cur_k = k;
                }
                cur |= 1u64 << v;
            }
            parts.push(cur);
            let added = parts.len();
            cells.splice(c..c + 1, parts);
            c += added;
            split_any = true;
        }
        s = if split_any { 0 } else { s + 1 };
    }
}

fn individualize(cells: &[u64], target: usize, v: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..target]);
    out.push(1u64 << v);
    out.push(cells[target] & !(1u64 << v));
    out.extend_from_slice(&cells[target + 1..]);
    out
}

fn is_discrete(cells: &[u64], n: usize) -> bool {
    cells.len() == n
}

fn target_cell(cells: &[u64]) -> Option<usize> {
    cells.iter().position(|c| c.count_ones() > 1)
}

/// Rows of the graph relabeled by `perm` (position -> original vertex).
fn relabel_rows(adj: &[u64], perm: &[usize]) -> Vec<u64> {
    let mut pos = [0usize; 64];
    for (i, &v) in perm.iter().enumerate() {
        pos[v] = i;
    }
    perm.iter()
        .map(|&v| VertexSet::from_bits(adj[v]).iter().fold(0u64, |r, u| r | (1u64 << pos[u])))
        .collect()
}

fn leaf_perm(cells: &[u64]) -> Vec<usize> {
    cells.iter().map(|c| c.trailing_zeros() as usize).collect()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

struct Leaf {
    prefix: Vec<usize>,
    perm: Vec<usize>,
    rows: Vec<u64>,
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Automorphisms found so far, as vertex maps.
    generators: Vec<Vec<usize>>,
    /// Cell-size profiles along the first path, for equivalence pruning.
    first_shapes: Vec<Vec<u32>>,
}

impl<'a> Search<'a> {
    fn new(adj: &'a [u64]) -> Self {
        Search {
            adj,
            n: adj.len(),
            first: None,
            best: None,
            generators: Vec::new(),
            first_shapes: Vec::new(),
        }
    }

    fn orbits_fixing(&self, prefix: &[usize]) -> UnionFind {
        let mut uf = UnionFind::new(self.n);
        for g in &self.generators {
            if prefix.iter().all(|&v| g[v] == v) {
                for (v, &w) in g.iter().enumerate() {
                    uf.union(v, w);
                }
            }
        }
        uf
    }

    fn record_automorphism(&mut self, from: &[usize], to: &[usize]) {
        let mut map = vec![0usize; self.n];
        for (&a, &b) in from.iter().zip(to) {
            map[a] = b;
        }
        if map.iter().enumerate().any(|(v, &w)| v != w) && !self.generators.contains(&map) {
            self.generators.push(map);
        }
    }

    /// Returns `Some(d)` when the caller's subtree is equivalent to an
    /// explored one and the search should resume at depth `d`.
    fn canon_dfs(&mut self, mut cells: Vec<u64>, prefix: &mut Vec<usize>) -> Option<usize> {
        refine(self.adj, &mut cells);
        let depth = prefix.len();
        if self.first.is_none() {
            self.first_shapes.push(cells.iter().map(|c| c.count_ones()).collect());
        }
        if is_discrete(&cells, self.n) {
            let perm = leaf_perm(&cells);
            let rows = relabel_rows(self.adj, &perm);
            let Some(first) = &self.first else {
                let leaf = Leaf {
                    prefix: prefix.clone(),
                    perm: perm.clone(),
                    rows: rows.clone(),
                };
                self.first = Some(leaf);
                self.best = Some(Leaf {
                    prefix: prefix.clone(),
                    perm,
                    rows,
                });
                return None;
            };
            if rows == first.rows {
                let first_perm = first.perm.clone();
                let diverge = first.prefix.iter().zip(prefix.iter()).take_while(|(a, b)| a == b).count();
                self.record_automorphism(&first_perm, &perm);
                return Some(diverge);
            }
            let best = self.best.as_ref().expect("best set with first");
            if rows == best.rows {
                let best_perm = best.perm.clone();
                self.record_automorphism(&best_perm, &perm);
            } else if rows < best.rows {
                self.best = Some(Leaf {
                    prefix: prefix.clone(),
                    perm,
                    rows,
                });
            }
            return None;
        }

        let t = target_cell(&cells).expect("non-discrete partition has a target cell");
        let mut explored: Vec<usize> = Vec::new();
        for w in VertexSet::from_bits(cells[t]) {
            if !explored.is_empty() {
                let mut uf = self.orbits_fixing(prefix);
                let rw = uf.find(w);
                if explored.iter().any(|&x| uf.find(x) == rw) {
                    continue;
                }
            }
            prefix.push(w);
            let r = self.canon_dfs(individualize(&cells, t, w), prefix);
            prefix.pop();
            explored.push(w);
            if let Some(d) = r {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    /// Looks for a leaf below `cells` with the same relabeled adjacency as the
    /// first leaf. Records the automorphism when found.
    fn find_equivalent_leaf(&mut self, mut cells: Vec<u64>, prefix: &mut Vec<usize>) -> bool {
        refine(self.adj, &mut cells);
        let depth = prefix.len();
        let shape: Vec<u32> = cells.iter().map(|c| c.count_ones()).collect();
        if self.first_shapes.get(depth) != Some(&shape) {
            return false;
        }
        if is_discrete(&cells, self.n) {
            let perm = leaf_perm(&cells);
            let first = self.first.as_ref().expect("search ran");
            if relabel_rows(self.adj, &perm) == first.rows {
                let first_perm = first.perm.clone();
                self.record_automorphism(&first_perm, &perm);
                return true;
            }
            return false;
        }
        let t = target_cell(&cells).expect("non-discrete partition has a target cell");
        let mut explored: Vec<usize> = Vec::new();
        for w in VertexSet::from_bits(cells[t]) {
            if !explored.is_empty() {
                let mut uf = self.orbits_fixing(prefix);
                let rw = uf.find(w);
                if explored.iter().any(|&x| uf.find(x) == rw) {
                    continue;
                }
            }
            prefix.push(w);
            let found = self.find_equivalent_leaf(individualize(&cells, t, w), prefix);
            prefix.pop();
            if found {
                return true;
            }
            explored.push(w);
        }
        false
    }
}

fn unit_partition(n: usize) -> Vec<u64> {
    if n == 0 {
        Vec::new()
    } else {
        vec![VertexSet::full(n).bits()]
    }
}

fn run_search(adj: &[u64]) -> Search<'_> {
    let mut search = Search::new(adj);
    let mut prefix = Vec::new();
    search.canon_dfs(unit_partition(adj.len()), &mut prefix);
    search
}

/// Canonical labeling: `perm[i]` is the original vertex placed at position `i`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    if g.n() == 0 {
        return Vec::new();
    }
    run_search(g.rows()).best.expect("search visits a leaf").perm
}

/// Canonical labeling together with the relabeled rows.
pub(crate) fn canonical_leaf(adj: &[u64]) -> (Vec<usize>, Vec<u64>) {
    if adj.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let leaf = run_search(adj).best.expect("search visits a leaf");
    (leaf.perm, leaf.rows)
}

pub(crate) fn canonical_rows(adj: &[u64]) -> Vec<u64> {
    if adj.is_empty() {
        return Vec::new();
    }
    run_search(adj).best.expect("search visits a leaf").rows
}

pub(crate) fn canonical_code_of_rows(adj: &[u64]) -> CanonicalCode {
    CanonicalCode::from_rows(&canonical_rows(adj))
}

pub fn canonical_code(g: &Graph) -> CanonicalCode {
    canonical_code_of_rows(g.rows())
}

/// Canonical form as a graph.
pub fn canonical_form(g: &Graph) -> Graph {
    Graph::from_rows_unchecked(canonical_rows(g.rows()))
}

/// Exact order of the automorphism group, via orbit-stabilizer along the
/// first path of the search tree.
pub fn automorphism_count(g: &Graph) -> Result<BigUint> {
    let n = g.n();
    if n > AUT_EXACT_LIMIT {
        return Err(Error::unsupported("vertex count for exact automorphism count", AUT_EXACT_LIMIT as u128, n as u128));
    }
    if n <= 1 {
        return Ok(BigUint::from(1u32));
    }
    let adj = g.rows();
    let mut search = run_search(adj);
    let first_prefix = search.first.as_ref().expect("search visits a leaf").prefix.clone();

    let mut total = BigUint::from(1u32);
    let mut cells = unit_partition(n);
    for d in 0..first_prefix.len() {
        refine(adj, &mut cells);
        let t = target_cell(&cells).expect("first path node is not a leaf");
        let x = first_prefix[d];
        let stab_prefix = &first_prefix[..d];
        let mut orbit = 1u64;
        for w in VertexSet::from_bits(cells[t]) {
            if w == x {
                continue;
            }
            let mut uf = search.orbits_fixing(stab_prefix);
            if uf.find(w) == uf.find(x) {
                orbit += 1;
                continue;
            }
            let mut prefix = stab_prefix.to_vec();
            prefix.push(w);
            if search.find_equivalent_leaf(individualize(&cells, t, w), &mut prefix) {
                orbit += 1;
            }
        }
        total *= orbit;
        cells = individualize(&cells, t, x);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        (0u64..(1u64 << pairs.len())).map(move |mask| {
            let mut g = Graph::empty(n);
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.add_edge(i, j);
                }
            }
            g
        })
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == p.len() {
                out.push(p.clone());
                return;
            }
            for i in k..p.len() {
                p.swap(k, i);
                rec(k + 1, p, out);
                p.swap(k, i);
            }
        }
        rec(0, &mut p, &mut out);
        out
    }

    fn brute_aut(g: &Graph) -> u64 {
        permutations(g.n())
            .iter()
            .filter(|p| (0..g.n()).all(|u| (0..g.n()).all(|v| g.has_edge(u, v) == g.has_edge(p[u], p[v]))))
            .count() as u64
    }

    #[test]
    fn p3_relabelings_share_code() {
        let p3 = Graph::path(3);
        let code = canonical_code(&p3);
        for p in permutations(3) {
            assert_eq!(canonical_code(&p3.permuted(&p).unwrap()), code);
        }
        assert_ne!(canonical_code(&Graph::cycle(4)), canonical_code(&Graph::star(3)));
    }

    #[test]
    fn eleven_classes_on_four_vertices() {
        let codes: std::collections::HashSet<_> = all_graphs(4).map(|g| canonical_code(&g)).collect();
        assert_eq!(codes.len(), 11);
        let codes5: std::collections::HashSet<_> = all_graphs(5).map(|g| canonical_code(&g)).collect();
        assert_eq!(codes5.len(), 34);
    }

    #[test]
    fn relabel_invariance_up_to_six() {
        for n in 0..=5 {
            let perms = permutations(n);
            for g in all_graphs(n) {
                let code = canonical_code(&g);
                for p in &perms {
                    assert_eq!(canonical_code(&g.permuted(p).unwrap()), code, "{g:?} under {p:?}");
                }
            }
        }
        // n = 6: a sample of graphs against every permutation
        let perms = permutations(6);
        for g in all_graphs(6).step_by(97) {
            let code = canonical_code(&g);
            for p in &perms {
                assert_eq!(canonical_code(&g.permuted(p).unwrap()), code);
            }
        }
    }

    #[test]
    fn canonical_form_is_isomorphic_copy() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        let perm = canonical_labeling(&g);
        assert_eq!(g.permuted(&perm).unwrap(), canonical_form(&g));
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(automorphism_count(&Graph::star(3)).unwrap(), BigUint::from(6u32));
        assert_eq!(automorphism_count(&Graph::path(4)).unwrap(), BigUint::from(2u32));
        assert_eq!(automorphism_count(&Graph::cycle(5)).unwrap(), BigUint::from(10u32));
        assert_eq!(automorphism_count(&Graph::null()).unwrap(), BigUint::from(1u32));
        let f16: u64 = (1..=16).product();
        assert_eq!(automorphism_count(&Graph::empty(16)).unwrap(), BigUint::from(f16));
        assert_eq!(automorphism_count(&Graph::complete(16)).unwrap(), BigUint::from(f16));
        // K_{8,8}: 2 * 8! * 8!
        let f8: u64 = (1..=8).product();
        assert_eq!(automorphism_count(&Graph::complete_bipartite(8, 8)).unwrap(), BigUint::from(2 * f8 * f8));
        assert!(matches!(automorphism_count(&Graph::empty(17)), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn automorphisms_match_brute_force() {
        for n in 0..=5 {
            for g in all_graphs(n) {
                assert_eq!(automorphism_count(&g).unwrap(), BigUint::from(brute_aut(&g)), "{g:?}");
            }
        }
        for g in all_graphs(6).step_by(31) {
            assert_eq!(automorphism_count(&g).unwrap(), BigUint::from(brute_aut(&g)), "{g:?}");
        }
    }

    #[test]
    fn large_symmetric_graphs_terminate() {
        for g in [
            Graph::empty(64),
            Graph::complete(64),
            Graph::complete_bipartite(32, 32),
            Graph::cycle(64),
        ] {
            let code = canonical_code(&g);
            let mut rev: Vec<usize> = (0..64).collect();
            rev.rotate_left(17);
            assert_eq!(canonical_code(&g.permuted(&rev).unwrap()), code);
        }
    }
}
