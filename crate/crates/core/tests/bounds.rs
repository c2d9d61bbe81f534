mod common;

use std::f64::consts::E;

use common::*;
use inducibility::bounds::*;
use inducibility::brightness::brightness_exact;
use inducibility::exact::to_f64;
use inducibility::graph::{Graph, SparseGraph};
use inducibility::search::enumerate_graphs;
use rand::Rng;

fn phi_direct(s: u64) -> f64 {
    let x = s as f64;
    ((1..=s).map(|i| (x / i as f64).ln()).sum::<f64>() - x).exp()
}

#[test]
fn phi_matches_direct_sum_and_decreases() {
    for s in 1..=100 {
        let v = phi(s).unwrap();
        assert!((v - phi_direct(s)).abs() <= 1e-12 * v, "s = {s}");
        if s > 1 {
            assert!(v < phi(s - 1).unwrap());
        }
    }
    assert!(phi(100).unwrap() < 0.04);
    assert!((phi(1).unwrap() - 1.0 / E).abs() < 1e-15);
    assert!(phi(0).is_err());
    assert!(phi(1_000_000).unwrap() > 0.0);
}

#[test]
fn closed_form_constants() {
    assert!((lemma51_bound(0.0, 1.0).unwrap() - 2.0 / (E * E)).abs() < 1e-9);
    assert!((lemma51_bound(0.0, 0.0).unwrap() - 1.0 / E).abs() < 1e-9);
    assert!((lemma31_part2(1, 1).unwrap() - 1.0 / (E * E)).abs() < 1e-9);
    let a = find_sparse_alpha();
    assert!(a.c >= 2.0 / (E * E) && a.c < 1.0 / E);
    let grid: Vec<f64> = (0..=100).map(|i| lemma51_bound(0.0, i as f64 / 100.0).unwrap()).collect();
    assert!(grid.windows(2).all(|w| w[1] < w[0]));
}

fn random_gap_instance(r: &mut impl Rng, eps: f64, c: f64) -> SparseGraph {
    let k = r.gen_range(10..200usize);
    let hub_degree = r.gen_range((eps * k as f64).ceil() as usize..k);
    let mut edges: Vec<(usize, usize)> = (1..=hub_degree).map(|v| (0, v)).collect();
    let budget = (c * k as f64).floor() as usize;
    while edges.len() < budget && r.gen_bool(0.95) {
        let (u, v) = (r.gen_range(1..k), r.gen_range(1..k));
        if u != v && !edges.contains(&(u.min(v), u.max(v))) {
            edges.push((u.min(v), u.max(v)));
        }
    }
    SparseGraph::from_edges(k, &edges).unwrap()
}

#[test]
fn degree_gap_postconditions_on_random_graphs() {
    let mut r = rng(21);
    for i in 0..1000 {
        let (eps, c) = if i % 2 == 0 { (0.5, 1.0) } else { (0.3, 2.5) };
        let h = random_gap_instance(&mut r, eps, c);
        let g = find_degree_gap(&h, eps, c).unwrap();
        let k = h.n() as f64;
        assert!(g.a < g.b && g.b <= eps + 1e-12);
        assert!((g.b - g.a - g.delta).abs() < 1e-12);
        for v in 0..h.n() {
            let d = h.degree(v) as f64;
            assert!(!(d > g.a * k && d < g.b * k));
        }
        assert!(g.s >= 1 && g.s as f64 <= 2.0 * c / g.delta + 1e-9);
        assert_eq!(g.big_s.len(), g.s);
    }
}

#[test]
fn regime_is_complement_invariant() {
    let params = BoundParams::default();
    for n in 1..=7 {
        for h in enumerate_graphs(n).unwrap() {
            let a = regime_selector(&SparseGraph::from(&h), &params).unwrap();
            let b = regime_selector(&SparseGraph::from(&h.complement()), &params).unwrap();
            assert_eq!(a.regime, b.regime, "{h}");
            assert_eq!(a.finite_value, b.finite_value, "{h}");
        }
    }
}

#[test]
fn sparse_bound_never_undercuts_the_floor() {
    for m in 2..=7 {
        for h in enumerate_graphs(m).unwrap() {
            if h.non_isolated().len() != m || h.edge_count() < 2 {
                continue;
            }
            let nu = to_f64(&brightness_exact(&h).unwrap());
            for k in [m, 2 * m, 10 * m] {
                let v = lemma51_bound(m as f64 / k as f64, nu).unwrap();
                assert!(v >= 2.0 / (E * E) - 1e-12, "{h}");
            }
        }
    }
}

#[test]
fn selector_examples() {
    let star = SparseGraph::from_edges(100, &(1..100).map(|v| (0, v)).collect::<Vec<_>>()).unwrap();
    let r = regime_selector(&star, &BoundParams::default()).unwrap();
    assert_eq!(r.regime, Regime::HighDegreeS);
    assert!((r.finite_value.unwrap() - phi(1).unwrap()).abs() < 1e-15);

    let sparse = SparseGraph::from(&Graph::path(3).with_isolated(61));
    let r = regime_selector(&sparse, &BoundParams::default()).unwrap();
    assert_eq!(r.regime, Regime::SparseCore);
    assert_eq!(r.inputs.nu, Some(1.0 / 3.0));

    let dense = SparseGraph::from(&Graph::complete(8).complement().complement());
    let r = regime_selector(&dense, &BoundParams::default()).unwrap();
    assert!(r.complemented);
}
