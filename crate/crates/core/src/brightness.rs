//! Bright labelings and the brightness `ν(H)`.
//!
//! Only the relative order of non-isolated vertices matters: an isolated
//! vertex never has positive back-degree and never changes anyone else's.
//! So everything here works on the core `M(H)`.

use num_traits::Zero;
use rand::seq::SliceRandom;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ratio, ser_opt_rational, ser_rational, Rational};
use crate::graph::{DegreeProfile, Graph, VertexSet};
use crate::stats::{mc_count, McEstimate};
use crate::structure::classify_vertices;

/// Largest core size for [`brightness_exact`].
pub const BRIGHTNESS_EXACT_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BrightnessBounds {
    #[serde(serialize_with = "ser_rational")]
    pub lb_m2: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub lb_m1: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub special_m1: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BrightnessReport {
    #[serde(serialize_with = "ser_opt_rational")]
    pub exact: Option<Rational>,
    pub mc: Option<McEstimate>,
    /// `None` when the graph has fewer than two edges.
    pub bounds: Option<BrightnessBounds>,
    /// The universal floor `1/12`, present when it applies.
    #[serde(serialize_with = "ser_opt_rational")]
    pub lb_const: Option<Rational>,
}

fn bright_order(adj: &[u64], detectable: u64, order: &[usize]) -> bool {
    let mut seen = 0u64;
    let (mut second, mut last) = (None, None);
    for &v in order {
        if adj[v] & seen != 0 {
            second = last;
            last = Some(v);
        }
        seen |= 1u64 << v;
    }
    match (second, last) {
        (Some(a), Some(b)) => detectable >> a & 1 == 1 && detectable >> b & 1 == 1,
        _ => false,
    }
}

pub fn is_bright(h: &Graph, labeling: &[usize]) -> Result<bool> {
    let n = h.n();
    if labeling.len() != n
        || labeling.iter().any(|&v| v >= n)
        || labeling.iter().copied().collect::<VertexSet>().len() != n
    {
        return Err(Error::input("labeling is not a permutation of the vertex set"));
    }
    let det = classify_vertices(h).detectable.bits();
    Ok(bright_order(h.rows(), det, labeling))
}

struct Core {
    adj: Vec<u64>,
    detectable: u64,
}

fn core_of(h: &Graph) -> Core {
    let core = h.non_isolated_core();
    let detectable = classify_vertices(&core).detectable.bits();
    Core {
        adj: core.rows().to_vec(),
        detectable,
    }
}

/// Exact `ν(h)`. Counts bright orderings of the core by dynamic programming
/// over (placed set, status of the last two positive positions).
pub fn brightness_exact(h: &Graph) -> Result<Rational> {
    let core = core_of(h);
    let m = core.adj.len();
    if m > BRIGHTNESS_EXACT_LIMIT {
        return Err(Error::unsupported("non-isolated vertex count for exact brightness", BRIGHTNESS_EXACT_LIMIT as u128, m as u128));
    }
    let bright = count_bright(&core);
    let total: u64 = (1..=m as u64).product();
    Ok(ratio(bright, total))
}

fn count_bright(core: &Core) -> u64 {
    // status: 0 = no positive position yet, 1 = detectable, 2 = obscure
    let m = core.adj.len();
    let full = (1usize << m) - 1;
    // memo[mask * 9 + state]
    let mut memo = vec![u64::MAX; (full + 1) * 9];
    fn go(core: &Core, mask: usize, state: usize, full: usize, memo: &mut [u64]) -> u64 {
        if mask == full {
            return u64::from(state == 4);
        }
        let key = mask * 9 + state;
        if memo[key] != u64::MAX {
            return memo[key];
        }
        let mut total = 0;
        let mut free = full & !mask;
        while free != 0 {
            let v = free.trailing_zeros() as usize;
            free &= free - 1;
            let next = if core.adj[v] & mask as u64 != 0 {
                let s = if core.detectable >> v & 1 == 1 { 1 } else { 2 };
                (state % 3) * 3 + s
            } else {
                state
            };
            total += go(core, mask | 1 << v, next, full, memo);
        }
        memo[key] = total;
        total
    }
    go(core, 0, 0, full, &mut memo)
}

/// Fraction of bright orderings among `samples` uniform shuffles.
pub fn brightness_mc(h: &Graph, samples: u64, seed: u64) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::input("samples must be at least 1"));
    }
    let core = core_of(h);
    let base: Vec<usize> = (0..core.adj.len()).collect();
    let hits = mc_count(samples, seed, |rng| {
        let mut order = base.clone();
        order.shuffle(rng);
        bright_order(&core.adj, core.detectable, &order)
    });
    Ok(McEstimate::from_counts(hits, samples, seed))
}

fn choose2(x: usize) -> u64 {
    (x * x.saturating_sub(1) / 2) as u64
}

/// The three closed-form lower bounds on `ν(h)`; requires at least two edges.
pub fn brightness_lower_bounds(h: &Graph) -> Result<BrightnessBounds> {
    lower_bounds_from_profile(&h.degree_profile(), |u, v| h.has_edge(u, v))
}

pub(crate) fn lower_bounds_from_profile(p: &DegreeProfile, has_edge: impl Fn(usize, usize) -> bool) -> Result<BrightnessBounds> {
    if p.edge_count < 2 {
        return Err(Error::precondition(format!("need at least 2 edges, found {}", p.edge_count)));
    }
    let pairs = choose2(p.m);
    let lb_m2 = ratio(choose2(p.m_ge2), pairs);
    let lb_m1 = if p.m1 > 2 {
        ratio((p.m1 * (p.m1 - 2)) as u64, 2 * pairs)
    } else {
        Rational::zero()
    };
    let leaves: Vec<usize> = (0..p.degrees.len()).filter(|&v| p.degrees[v] == 1).collect();
    let special_m1 = if leaves.len() == 2 && !has_edge(leaves[0], leaves[1]) {
        ratio(1, pairs)
    } else {
        Rational::zero()
    };
    Ok(BrightnessBounds { lb_m2, lb_m1, special_m1 })
}

/// Exact value when the core is small enough, otherwise (or additionally,
/// when `mc` is given) a Monte-Carlo estimate.
pub fn brightness_report(h: &Graph, mc: Option<(u64, u64)>) -> Result<BrightnessReport> {
    let exact = match brightness_exact(h) {
        Ok(v) => Some(v),
        Err(Error::Unsupported { .. }) => None,
        Err(e) => return Err(e),
    };
    let mc = match (mc, &exact) {
        (Some((samples, seed)), _) => Some(brightness_mc(h, samples, seed)?),
        (None, None) => Some(brightness_mc(h, 100_000, 0)?),
        (None, Some(_)) => None,
    };
    let two_edges = h.edge_count() >= 2;
    Ok(BrightnessReport {
        exact,
        mc,
        bounds: if two_edges { Some(brightness_lower_bounds(h)?) } else { None },
        lb_const: two_edges.then(|| ratio(1, 12)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(h: &Graph) -> Rational {
        let m = h.n();
        let mut perm: Vec<usize> = (0..m).collect();
        let (mut bright, mut total) = (0u64, 0u64);
        fn rec(k: usize, p: &mut Vec<usize>, h: &Graph, bright: &mut u64, total: &mut u64) {
            if k == p.len() {
                *total += 1;
                *bright += u64::from(is_bright(h, p).unwrap());
                return;
            }
            for i in k..p.len() {
                p.swap(k, i);
                rec(k + 1, p, h, bright, total);
                p.swap(k, i);
            }
        }
        rec(0, &mut perm, h, &mut bright, &mut total);
        ratio(bright, total)
    }

    fn two_k2() -> Graph {
        Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()
    }

    #[test]
    fn bright_examples() {
        // P3 as a - c - b with c = 1
        let p3 = Graph::path(3);
        assert!(is_bright(&p3, &[1, 0, 2]).unwrap());
        assert!(!is_bright(&p3, &[0, 1, 2]).unwrap());
        assert!(is_bright(&two_k2(), &[3, 1, 0, 2]).unwrap());
        assert!(is_bright(&p3, &[0, 0, 1]).is_err());
    }

    #[test]
    fn exact_examples() {
        assert_eq!(brightness_exact(&Graph::path(3)).unwrap(), ratio(1, 3));
        assert_eq!(brightness_exact(&two_k2()).unwrap(), ratio(1, 1));
        assert_eq!(brightness_exact(&Graph::complete(3)).unwrap(), ratio(1, 1));
        assert_eq!(brightness_exact(&Graph::path(2)).unwrap(), ratio(0, 1));
        assert!(brightness_exact(&Graph::cycle(11)).is_err());
    }

    #[test]
    fn dp_matches_brute_force() {
        for g in [
            Graph::path(4),
            Graph::path(5),
            Graph::star(4),
            Graph::cycle(5),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (0, 3)]).unwrap(),
            Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap(),
        ] {
            assert_eq!(brightness_exact(&g).unwrap(), brute_force(&g), "{g}");
        }
    }

    #[test]
    fn isolated_vertices_are_neutral() {
        let p3 = Graph::path(3);
        for j in 0..4 {
            assert_eq!(brute_force(&p3.with_isolated(j)), ratio(1, 3));
            assert_eq!(brightness_exact(&p3.with_isolated(j)).unwrap(), ratio(1, 3));
        }
    }

    #[test]
    fn lower_bound_examples() {
        let b = brightness_lower_bounds(&Graph::path(3)).unwrap();
        assert_eq!((b.lb_m2, b.lb_m1, b.special_m1), (ratio(0, 1), ratio(0, 1), ratio(1, 3)));
        assert_eq!(brightness_lower_bounds(&Graph::complete(3)).unwrap().lb_m2, ratio(1, 1));
        assert_eq!(brightness_lower_bounds(&Graph::path(4)).unwrap().special_m1, ratio(1, 6));
        assert!(brightness_lower_bounds(&Graph::path(2)).is_err());
    }

    #[test]
    fn mc_examples() {
        let p3 = Graph::path(3);
        let est = brightness_mc(&p3, 100_000, 1).unwrap();
        assert!((est.estimate - 1.0 / 3.0).abs() < 0.01);
        assert_eq!(brightness_mc(&Graph::complete(3), 100, 5).unwrap().estimate, 1.0);
        let one = brightness_mc(&p3, 1, 11).unwrap().estimate;
        assert!(one == 0.0 || one == 1.0);
        assert_eq!(brightness_mc(&p3, 5000, 3).unwrap(), brightness_mc(&p3, 5000, 3).unwrap());
        assert!(brightness_mc(&p3, 0, 3).is_err());
    }
}
