use inducibility::constructions::*;
use inducibility::density::induced_density;
use inducibility::exact::{ratio, to_f64};
use inducibility::graph::{Graph, VertexSet};
use inducibility::structure::minimal_taming_number;
use std::f64::consts::E;

#[test]
fn split_headline_example() {
    let r = split_construction(3, 1, 300, 1.0 / 3.0).unwrap();
    // one vertex from the part of 100, two from the part of 200
    assert_eq!(r.achieved, Some(ratio(100 * 19_900, 4_455_100)));
    assert_eq!(r.achieved, Some(ratio(1_990_000, 4_455_100)));
    assert!((r.limit_formula - 4.0 / 9.0).abs() < 1e-15);
}

#[test]
fn split_converges_to_limit() {
    for n in [300, 600, 900] {
        let r = split_construction(3, 1, n, 1.0 / 3.0).unwrap();
        assert!((to_f64(r.achieved.as_ref().unwrap()) - r.limit_formula).abs() <= 0.02);
    }
}

#[test]
fn limits_approach_closed_forms() {
    let r = split_construction(100, 1, 10_000, 0.01).unwrap();
    assert!((r.limit_formula - 1.0 / E).abs() < 0.002);
    let r = split_construction(200, 2, 200, 0.01).unwrap();
    assert!((r.limit_formula - 2.0 / (E * E)).abs() < 0.01);
    let r = split_plus_edge(200, 400).unwrap();
    assert!((r.limit_formula - 2.0 / (E * E)).abs() < 0.01);
}

#[test]
fn reports_agree_with_subset_counting() {
    for (h, n) in [(Graph::star(3), 16), (Graph::path(4), 10), (Graph::complete_bipartite(2, 2), 12)] {
        let (_, w) = minimal_taming_number(&h).unwrap();
        let r = dtame_blowup(&h, w.v0, n).unwrap();
        let g = r.graph.to_graph().unwrap();
        let exact = induced_density(&h, &g).unwrap().density;
        assert_eq!(r.density.clone().unwrap(), exact, "{h}");
        assert!(r.achieved.clone().unwrap() <= exact);
    }
}

#[test]
fn dtame_blowup_star_is_close_to_limit() {
    let r = dtame_blowup(&Graph::star(3), VertexSet::singleton(0), 200).unwrap();
    assert!(to_f64(r.achieved.as_ref().unwrap()) >= 0.5 * 27.0 / 64.0);
    assert!(dtame_blowup(&Graph::star(3), VertexSet::singleton(1), 200).is_err());
}

#[test]
fn gnp_is_seeded() {
    let a = gnp_construction(6, 30, 17).unwrap();
    let b = gnp_construction(6, 30, 17).unwrap();
    assert_eq!(a.graph, b.graph);
    assert_ne!(a.graph, gnp_construction(6, 30, 18).unwrap().graph);
    assert_eq!(a.seed, Some(17));
}
