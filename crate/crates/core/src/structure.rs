//! Taming sets and the happy / detectable / obscure vertex classes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest graph handled by [`minimal_taming_number`].
pub const TAMING_EXACT_LIMIT: usize = 16;
/// Largest graph handled by [`is_obscure_oracle`].
pub const OBSCURE_ORACLE_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    /// Built from a seed set by adding the vertices that break symmetry.
    SeedClosure,
    ExactMin,
    User,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TameWitness {
    pub v0: VertexSet,
    pub valid: bool,
    pub source: WitnessSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClassification {
    pub happy: VertexSet,
    pub degree_one: VertexSet,
    pub detectable: VertexSet,
    pub obscure: VertexSet,
}

fn check_subset(h: &Graph, w: VertexSet) -> Result<()> {
    if let Some(bad) = w.difference(h.vertices()).iter().next() {
        return Err(Error::input(format!("vertex {bad} out of range for n = {}", h.n())));
    }
    Ok(())
}

fn tamed_unchecked(h: &Graph, v0: VertexSet) -> bool {
    let rest = h.vertices().difference(v0);
    if !(h.is_clique(rest) || h.is_stable(rest)) {
        return false;
    }
    v0.iter().all(|v| {
        let into = h.neighbors(v).intersection(rest);
        into.is_empty() || into == rest
    })
}

/// `V(h) \ v0` is a clique or a stable set and every vertex of `v0` sees all
/// or none of it. Equivalent to: every permutation fixing `v0` pointwise is an
/// automorphism.
pub fn is_tamed_by(h: &Graph, v0: VertexSet) -> Result<bool> {
    check_subset(h, v0)?;
    Ok(tamed_unchecked(h, v0))
}

/// `s ∪ T ∪ U` where `T` holds the outside vertices not complete to `s` and `U`
/// the outside vertices with a neighbor outside `s`.
pub fn tame_witness_from(h: &Graph, s: VertexSet) -> Result<TameWitness> {
    check_subset(h, s)?;
    let outside = h.vertices().difference(s);
    let t: VertexSet = outside.iter().filter(|&v| h.neighbors(v).intersection(s) != s).collect();
    let u: VertexSet = outside
        .iter()
        .filter(|&v| !h.neighbors(v).intersection(outside).is_empty())
        .collect();
    let v0 = s.union(t).union(u);
    let valid = tamed_unchecked(h, v0);
    if !valid {
        return Err(Error::Invariant(format!("witness {v0:?} does not tame {h}")));
    }
    Ok(TameWitness {
        v0,
        valid,
        source: WitnessSource::SeedClosure,
    })
}

/// Smallest taming set, found as the complement of a largest admissible
/// homogeneous set. Ties go to the numerically smallest `v0` bitmask.
pub fn minimal_taming_number(h: &Graph) -> Result<(usize, TameWitness)> {
    let n = h.n();
    if n > TAMING_EXACT_LIMIT {
        return Err(Error::unsupported("vertex count for exact taming", TAMING_EXACT_LIMIT as u128, n as u128));
    }
    let full = h.vertices().bits();
    let mut best: Option<u64> = None;
    for v0 in 0..=full {
        if best.is_some_and(|b| b.count_ones() <= v0.count_ones()) {
            continue;
        }
        if tamed_unchecked(h, VertexSet::from_bits(v0)) {
            best = Some(v0);
        }
    }
    let v0 = VertexSet::from_bits(best.expect("the full vertex set always tames"));
    Ok((
        v0.len(),
        TameWitness {
            v0,
            valid: true,
            source: WitnessSource::ExactMin,
        },
    ))
}

#[allow(non_snake_case)]
pub fn is_D_tame(h: &Graph, d: usize) -> Result<bool> {
    Ok(minimal_taming_number(h)?.0 <= d)
}

pub fn classify_vertices(h: &Graph) -> VertexClassification {
    let non_isolated = h.non_isolated();
    let degree_one: VertexSet = h.vertices().iter().filter(|&v| h.degree(v) == 1).collect();
    let happy: VertexSet = non_isolated
        .iter()
        .filter(|&v| h.neighbors(v).intersection(degree_one).is_empty())
        .collect();
    let detectable = happy.union(degree_one);
    VertexClassification {
        happy,
        degree_one,
        detectable,
        obscure: non_isolated.difference(detectable),
    }
}

/// Obscurity straight from the definition: search for distinct non-isolated
/// `v1, v2` with `v2` still non-isolated in `h - v1`, and a subset of
/// `V(h) - v1 - v2` inducing a copy of `M(h - v)`.
pub fn is_obscure_oracle(h: &Graph, v: usize) -> Result<bool> {
    let n = h.n();
    if v >= n {
        return Err(Error::input(format!("vertex {v} out of range for n = {n}")));
    }
    if n > OBSCURE_ORACLE_LIMIT {
        return Err(Error::unsupported("vertex count for the obscurity oracle", OBSCURE_ORACLE_LIMIT as u128, n as u128));
    }
    if h.degree(v) == 0 {
        return Err(Error::precondition(format!("vertex {v} is isolated")));
    }
    let mut minus_v = h.vertices();
    minus_v.remove(v);
    let core = h.induced(minus_v).non_isolated_core();
    let size = core.n();
    let edges = core.edge_count();
    let code = core.canonical_code();

    let non_isolated = h.non_isolated();
    for v1 in non_isolated {
        for v2 in non_isolated {
            if v1 == v2 || h.neighbors(v2).difference(VertexSet::singleton(v1)).is_empty() {
                continue;
            }
            let mut rest = h.vertices();
            rest.remove(v1);
            rest.remove(v2);
            if rest.len() < size {
                continue;
            }
            let found = SubsetIter::new(rest, size).any(|w| {
                let sub = h.induced(w);
                sub.edge_count() == edges && sub.canonical_code() == code
            });
            if found {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// All `size`-subsets of `base`, in lexicographic order.
pub(crate) struct SubsetIter {
    members: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl SubsetIter {
    pub(crate) fn new(base: VertexSet, size: usize) -> Self {
        let members = base.to_vec();
        let done = size > members.len();
        SubsetIter {
            idx: (0..size).collect(),
            members,
            done,
        }
    }
}

impl Iterator for SubsetIter {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().map(|&i| self.members[i]).collect();
        // advance to the next combination
        let (k, m) = (self.idx.len(), self.members.len());
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < m - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn tamed_examples() {
        assert!(is_tamed_by(&Graph::star(3), set(&[0])).unwrap());
        let p4 = Graph::path(4);
        assert!(!is_tamed_by(&p4, set(&[1, 2])).unwrap());
        assert!(is_tamed_by(&p4, p4.vertices()).unwrap());
        assert!(is_tamed_by(&p4, set(&[7])).is_err());
    }

    #[test]
    fn witness_examples() {
        let k23 = Graph::complete_bipartite(2, 3);
        assert_eq!(tame_witness_from(&k23, set(&[0, 1])).unwrap().v0, set(&[0, 1]));
        let p4 = Graph::path(4);
        assert_eq!(tame_witness_from(&p4, set(&[1])).unwrap().v0, set(&[1, 2, 3]));
        let g = Graph::path(3).with_isolated(2);
        assert_eq!(tame_witness_from(&g, VertexSet::EMPTY).unwrap().v0, g.non_isolated());
    }

    #[test]
    fn minimal_taming_examples() {
        assert_eq!(minimal_taming_number(&Graph::complete(5)).unwrap().0, 0);
        assert_eq!(minimal_taming_number(&Graph::star(3)).unwrap().0, 1);
        assert_eq!(minimal_taming_number(&Graph::path(4)).unwrap().0, 3);
        assert_eq!(minimal_taming_number(&Graph::null()).unwrap().0, 0);
        assert!(is_D_tame(&Graph::path(4), 3).unwrap());
        assert!(!is_D_tame(&Graph::path(4), 2).unwrap());
        assert!(is_D_tame(&Graph::empty(6), 0).unwrap());
        assert!(minimal_taming_number(&Graph::empty(17)).is_err());
    }

    #[test]
    fn classification_examples() {
        let c = classify_vertices(&Graph::path(3));
        assert_eq!(c.happy, set(&[0, 2]));
        assert_eq!(c.detectable, set(&[0, 2]));
        assert_eq!(c.obscure, set(&[1]));
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(classify_vertices(&two_k2).detectable, two_k2.vertices());
        let k3 = classify_vertices(&Graph::complete(3));
        assert_eq!(k3.happy, set(&[0, 1, 2]));
        assert_eq!(k3.detectable, set(&[0, 1, 2]));
        let iso = classify_vertices(&Graph::path(2).with_isolated(1));
        assert!(!iso.detectable.contains(2) && !iso.obscure.contains(2));
    }

    #[test]
    fn oracle_examples() {
        let p3 = Graph::path(3);
        assert!(is_obscure_oracle(&p3, 1).unwrap());
        assert!(!is_obscure_oracle(&p3, 0).unwrap());
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!((0..4).all(|v| !is_obscure_oracle(&two_k2, v).unwrap()));
        assert!(matches!(is_obscure_oracle(&Graph::path(2).with_isolated(1), 2), Err(Error::Precondition(_))));
        assert!(matches!(is_obscure_oracle(&Graph::cycle(11), 0), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn subset_iter_counts() {
        assert_eq!(SubsetIter::new(VertexSet::full(6), 3).count(), 20);
        assert_eq!(SubsetIter::new(VertexSet::full(4), 0).count(), 1);
        assert_eq!(SubsetIter::new(VertexSet::full(2), 3).count(), 0);
        assert_eq!(SubsetIter::new(set(&[1, 5, 9]), 2).collect::<Vec<_>>(), vec![set(&[1, 5]), set(&[1, 9]), set(&[5, 9])]);
    }
}
