mod common;

use common::*;
use inducibility::brightness::*;
use inducibility::exact::ratio;
use inducibility::graph::Graph;
use inducibility::search::enumerate_graphs;
use inducibility::structure::classify_vertices;
use num_traits::Zero;

/// Graphs without isolated vertices on `m <= 7` vertices and at least two
/// edges: every core that matters for the exhaustive claims.
fn cores() -> Vec<Graph> {
    (2..=7)
        .flat_map(|m| enumerate_graphs(m).unwrap())
        .filter(|g| g.non_isolated().len() == g.n() && g.edge_count() >= 2)
        .collect()
}

/// Bright orderings counted over all labelings of the whole graph.
fn brute_force(h: &Graph) -> inducibility::Rational {
    let all = permutations(h.n());
    let bright = all.iter().filter(|p| is_bright(h, p).unwrap()).count() as u64;
    ratio(bright, all.len() as u64)
}

#[test]
fn small_values() {
    assert_eq!(brute_force(&Graph::path(3)), ratio(1, 3));
    assert_eq!(brightness_exact(&Graph::path(3)).unwrap(), ratio(1, 3));
    let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    assert_eq!(brightness_exact(&two_k2).unwrap(), ratio(1, 1));
    assert_eq!(brightness_exact(&Graph::complete(3)).unwrap(), ratio(1, 1));
}

#[test]
fn exact_matches_full_labeling_count() {
    for n in 2..=6 {
        for h in enumerate_graphs(n).unwrap() {
            assert_eq!(brightness_exact(&h).unwrap(), brute_force(&h), "{h}");
        }
    }
}

#[test]
fn isolated_vertices_do_not_matter() {
    for h in enumerate_graphs(5).unwrap() {
        let base = brightness_exact(&h).unwrap();
        for j in 1..=3 {
            assert_eq!(brightness_exact(&h.with_isolated(j)).unwrap(), base, "{h}");
        }
    }
}

#[test]
fn floor_and_lower_bounds_hold_exhaustively() {
    let floor = ratio(1, 12);
    let cores = cores();
    assert!(cores.len() > 800);
    for h in cores {
        let nu = brightness_exact(&h).unwrap();
        assert!(nu >= floor, "{h}");
        let b = brightness_lower_bounds(&h).unwrap();
        assert!(b.lb_m2 <= nu && b.lb_m1 <= nu && b.special_m1 <= nu, "{h}");
        assert!(b.lb_m1 >= inducibility::Rational::zero());
        if classify_vertices(&h).obscure.is_empty() {
            assert_eq!(nu, ratio(1, 1), "{h}");
        }
    }
}

#[test]
fn monte_carlo_interval_covers_exact_value() {
    let p3 = Graph::path(3);
    let covered = (0..100)
        .filter(|&seed| {
            let e = brightness_mc(&p3, 2000, seed).unwrap();
            e.ci_low <= 1.0 / 3.0 && 1.0 / 3.0 <= e.ci_high
        })
        .count();
    assert!(covered >= 90, "{covered}");
}

#[test]
fn report_switches_to_monte_carlo_for_large_cores() {
    let r = brightness_report(&Graph::cycle(12), None).unwrap();
    assert!(r.exact.is_none());
    let mc = r.mc.unwrap();
    assert_eq!(mc.samples, 100_000);
    // every vertex of a cycle is happy
    assert_eq!(mc.estimate, 1.0);
    let r = brightness_report(&Graph::path(3), None).unwrap();
    assert_eq!(r.exact, Some(ratio(1, 3)));
    assert!(r.mc.is_none());
    assert!(brightness_report(&Graph::path(2), None).unwrap().bounds.is_none());
}
