#![allow(dead_code)]

use inducibility::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Every labeled graph on `n` vertices.
pub fn all_labeled(n: usize) -> Vec<Graph> {
    let p = pairs(n);
    (0u64..1 << p.len())
        .map(|mask| {
            let edges: Vec<_> = p.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
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
    let mut out = Vec::new();
    rec(0, &mut (0..n).collect(), &mut out);
    out
}

/// Whether `perm` maps `a` onto `b` edge for edge.
pub fn maps_onto(a: &Graph, b: &Graph, perm: &[usize]) -> bool {
    pairs(a.n()).into_iter().all(|(i, j)| a.has_edge(i, j) == b.has_edge(perm[i], perm[j]))
}

pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && permutations(a.n()).iter().any(|p| maps_onto(a, b, p))
}

pub fn brute_aut(g: &Graph) -> u64 {
    permutations(g.n()).iter().filter(|p| maps_onto(g, g, p)).count() as u64
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}
