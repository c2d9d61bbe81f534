//! Property suites behind `inducibility verify`. Each check reports how many
//! cases it ran and the first counterexample, if any.

use std::f64::consts::E;

use inducibility::bounds::{find_sparse_alpha, lemma31_part2, lemma51_bound, phi};
use inducibility::brightness::{brightness_exact, brightness_lower_bounds, is_bright};
use inducibility::coloring::simulate;
use inducibility::constructions::{split_construction, split_limit};
use inducibility::exact::{ratio, to_f64, Rational};
use inducibility::graph::automorphism_count;
use inducibility::proba::{
    binom_point, binom_point_max_bound, hypergeom_point, lambda_split, multi_hypergeom_joint, poly_exp_check,
    HypergeomParams,
};
use inducibility::search::{enumerate_graphs, ind_exact};
use inducibility::stats::substream;
use inducibility::structure::{classify_vertices, is_obscure_oracle, is_tamed_by, minimal_taming_number, tame_witness_from};
use inducibility::{Graph, VertexSet};
use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use serde::Serialize;

use crate::args::Suite;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Appendix => "appendix",
            Suite::Structure => "structure",
            Suite::Brightness => "brightness",
            Suite::Formulas => "formulas",
            Suite::Search => "search",
            Suite::Coloring => "coloring",
            Suite::All => "all",
        }
    }
}

struct Tally {
    suite: &'static str,
    name: &'static str,
    cases: u64,
    failure: Option<String>,
    detail: Option<String>,
}

impl Tally {
    fn new(suite: &'static str, name: &'static str) -> Self {
        Tally {
            suite,
            name,
            cases: 0,
            failure: None,
            detail: None,
        }
    }

    fn case(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(counterexample());
        }
    }

    fn detail(mut self, d: String) -> Self {
        self.detail = Some(d);
        self
    }

    fn done(self) -> Check {
        Check {
            suite: self.suite,
            name: self.name,
            passed: self.failure.is_none(),
            cases: self.cases,
            counterexample: self.failure,
            detail: self.detail,
        }
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Appendix => appendix(seed)?,
        Suite::Structure => structure(seed)?,
        Suite::Brightness => brightness()?,
        Suite::Formulas => formulas()?,
        Suite::Search => search()?,
        Suite::Coloring => coloring(seed)?,
        Suite::All => {
            let mut all = appendix(seed)?;
            all.extend(structure(seed)?);
            all.extend(brightness()?);
            all.extend(formulas()?);
            all.extend(search()?);
            all.extend(coloring(seed)?);
            all
        }
    };
    Ok(SuiteReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn graphs_up_to(n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for i in 1..=n {
        out.extend(enumerate_graphs(i)?);
    }
    Ok(out)
}

/// Graphs with no isolated vertex, at least two edges and at most `m` vertices.
fn cores(m: usize) -> Result<Vec<Graph>> {
    Ok(graphs_up_to(m)?
        .into_iter()
        .filter(|g| g.non_isolated().len() == g.n() && g.edge_count() >= 2)
        .collect())
}

pub fn appendix(seed: u64) -> Result<Vec<Check>> {
    const S: &str = "appendix";
    let mut checks = Vec::new();
    let mut rng = substream(seed, 0);

    let mut t = Tally::new(S, "hypergeometric_pmf_sums_to_one");
    for _ in 0..200 {
        let n = rng.gen_range(1..=60u64);
        let successes = rng.gen_range(0..=n);
        let sample = rng.gen_range(0..=n);
        let mut total = Rational::from_integer(0.into());
        for hits in 0..=sample {
            total += hypergeom_point(&HypergeomParams {
                population: n,
                successes,
                sample,
                hits,
            })?;
        }
        t.case(total.is_one(), || format!("N = {n}, K = {successes}, k = {sample}: sum {total}"));
    }
    checks.push(t.done());

    let mut t = Tally::new(S, "hypergeometric_below_binomial_peak");
    for _ in 0..50 {
        let k = rng.gen_range(2..=8u64);
        let n = 10_000 * k;
        let s = rng.gen_range(1..k);
        let successes = rng.gen_range(0..=n);
        let h = to_f64(&hypergeom_point(&HypergeomParams {
            population: n,
            successes,
            sample: k,
            hits: s,
        })?);
        let cap = to_f64(&binom_point_max_bound(k, s)?) + 0.01;
        t.case(h <= cap, || format!("N = {n}, K = {successes}, k = {k}, s = {s}: {h} > {cap}"));
    }
    checks.push(t.done());

    let mut t = Tally::new(S, "joint_hypergeometric_below_phi_power");
    let (n, k) = (10_000u64, 100u64);
    for s in 1..=2u64 {
        for f in 1..=3usize {
            let cap = phi(s)?.powi(f as i32) + 0.05;
            for size in [s * n / k, 50, 100, 200, 400] {
                let p = to_f64(&multi_hypergeom_joint(n, k, &vec![size; f], s)?);
                t.case(p <= cap, || format!("s = {s}, f = {f}, part size {size}: {p} > {cap}"));
            }
        }
    }
    checks.push(t.done());

    let mut t = Tally::new(S, "phi_strictly_decreasing");
    let mut prev = f64::INFINITY;
    for s in 1..=100 {
        let v = phi(s)?;
        t.case(v < prev, || format!("phi({s}) = {v} >= phi({}) = {prev}", s - 1));
        prev = v;
    }
    checks.push(t.done());

    let mut t = Tally::new(S, "binomial_point_tends_to_phi");
    for s in 1..=5u64 {
        let b = to_f64(&binom_point(100_000, &ratio(s, 100_000), s)?);
        let p = phi(s)?;
        t.case((b - p).abs() < 1e-3, || format!("s = {s}: {b} vs {p}"));
    }
    checks.push(t.done());

    let mut t = Tally::new(S, "poly_exp_inequality_grid");
    for s in 1..=20 {
        for i in 0..=500 {
            let x = i as f64 / 10.0;
            let c = poly_exp_check(s, x)?;
            t.case(c.ok, || format!("s = {s}, x = {x}: {} vs {}", c.lhs, c.rhs));
        }
    }
    checks.push(t.done());

    let mut t = Tally::new(S, "lambda_interval_nonempty");
    for i in 0..=50 {
        for j in 0..=50 {
            let (y, z) = (i as f64 / 10.0, j as f64 / 10.0);
            let ok = lambda_split(y, z).is_ok_and(|l| l.lo <= l.hi + 1e-12);
            t.case(ok, || format!("y = {y}, z = {z}"));
        }
    }
    checks.push(t.done());

    let mut t = Tally::new(S, "lambda_interval_at_extremal_point");
    let l = lambda_split(2.0 / E, 1.0 - 2.0 / E)?;
    t.case((l.lo - 1.0 / E).abs() < 1e-9 && (l.hi - 2.0 / E).abs() < 1e-9, || {
        format!("[{}, {}]", l.lo, l.hi)
    });
    checks.push(t.done());

    let mut t = Tally::new(S, "binomial_point_peaks_at_s_over_k");
    for k in 2..=12u64 {
        for s in 1..k {
            let peak = binom_point_max_bound(k, s)?;
            let at = binom_point(k, &ratio(s, k), s)?;
            t.case(at == peak, || format!("k = {k}, s = {s}: value at s/k differs from the peak"));
            for i in 0..=200 {
                let v = binom_point(k, &ratio(i, 200), s)?;
                t.case(v <= peak, || format!("k = {k}, s = {s}, p = {i}/200 exceeds the value at s/k"));
            }
        }
    }
    checks.push(t.done());
    Ok(checks)
}

pub fn structure(seed: u64) -> Result<Vec<Check>> {
    const S: &str = "structure";
    let mut checks = Vec::new();
    let small = graphs_up_to(7)?;

    let mut t = Tally::new(S, "obscurity_oracle_matches_classifier").detail(format!("{} graphs on at most 7 vertices", small.len()));
    for h in &small {
        let det = classify_vertices(h).detectable;
        for v in h.non_isolated() {
            let oracle = is_obscure_oracle(h, v)?;
            t.case(oracle != det.contains(v), || format!("{h} vertex {v}"));
        }
    }
    checks.push(t.done());

    let mut t = Tally::new(S, "seeded_taming_witness_validates");
    let mut rng = substream(seed, 1);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=12usize);
        let p = rng.gen_range(0.05..0.95);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let h = Graph::from_edges(n, &edges)?;
        let s = VertexSet::from_bits(rng.gen::<u64>() & h.vertices().bits());
        let ok = match tame_witness_from(&h, s) {
            Ok(w) => w.valid && w.v0.intersection(s) == s && is_tamed_by(&h, w.v0)?,
            Err(_) => false,
        };
        t.case(ok, || format!("{h} seed set {:?}", s.to_vec()));
    }
    checks.push(t.done());

    let mut t = Tally::new(S, "minimal_taming_examples");
    let expect = [(Graph::path(4), 3), (Graph::star(3), 1)]
        .into_iter()
        .chain((1..=8).map(|k| (Graph::complete(k), 0)));
    for (h, d) in expect {
        let got = minimal_taming_number(&h)?.0;
        t.case(got == d, || format!("{h}: expected {d}, got {got}"));
    }
    checks.push(t.done());

    let mut t = Tally::new(S, "taming_number_bounds_automorphisms");
    for h in &small {
        let d = minimal_taming_number(h)?.0;
        let floor: BigUint = (1..=(h.n() - d) as u64).product();
        let aut = automorphism_count(h)?;
        t.case(aut >= floor, || format!("{h}: D = {d}, aut = {aut}"));
    }
    checks.push(t.done());
    Ok(checks)
}

pub fn brightness() -> Result<Vec<Check>> {
    const S: &str = "brightness";
    let mut checks = Vec::new();
    let family = cores(7)?;
    let twelfth = ratio(1, 12);

    let mut floor = Tally::new(S, "brightness_at_least_one_twelfth").detail(format!("{} cores", family.len()));
    let mut lower = Tally::new(S, "lower_bounds_below_exact");
    let mut detectable = Tally::new(S, "all_detectable_means_always_bright");
    for h in &family {
        let nu = brightness_exact(h)?;
        floor.case(nu >= twelfth, || format!("{h}: {nu}"));
        let b = brightness_lower_bounds(h)?;
        lower.case(b.lb_m2 <= nu && b.lb_m1 <= nu && b.special_m1 <= nu, || {
            format!("{h}: exact {nu}, bounds {} {} {}", b.lb_m2, b.lb_m1, b.special_m1)
        });
        if classify_vertices(h).obscure.is_empty() {
            detectable.case(nu.is_one(), || format!("{h}: {nu}"));
        }
    }
    checks.extend([floor.done(), lower.done(), detectable.done()]);

    let mut t = Tally::new(S, "small_values");
    let p3 = Graph::path(3);
    let mut bright = 0;
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        bright += u64::from(is_bright(&p3, &perm)?);
    }
    t.case(bright == 2, || format!("P3: {bright} of 6 orderings bright"));
    let two_k2 = Graph::complete(2).disjoint_union(&Graph::complete(2));
    for (h, want) in [(p3, ratio(1, 3)), (two_k2, ratio(1, 1)), (Graph::complete(3), ratio(1, 1))] {
        let got = brightness_exact(&h)?;
        t.case(got == want, || format!("{h}: {got}, expected {want}"));
    }
    checks.push(t.done());
    Ok(checks)
}

pub fn formulas() -> Result<Vec<Check>> {
    const S: &str = "formulas";
    let close = |a: f64, b: f64, tol: f64| (a - b).abs() <= tol;
    let mut checks = Vec::new();

    let mut t = Tally::new(S, "sparse_bound_endpoints");
    let hi = lemma51_bound(0.0, 1.0)?;
    let lo = lemma51_bound(0.0, 0.0)?;
    t.case(close(hi, 2.0 / (E * E), 1e-9), || format!("nu = 1: {hi}"));
    t.case(close(lo, 1.0 / E, 1e-9), || format!("nu = 0: {lo}"));
    checks.push(t.done());

    let mut t = Tally::new(S, "high_degree_pair_bound");
    let v = lemma31_part2(1, 1)?;
    t.case(close(v, 1.0 / (E * E), 1e-9), || format!("s = t = 1: {v}"));
    checks.push(t.done());

    let mut t = Tally::new(S, "sparse_alpha_constant");
    let a = find_sparse_alpha();
    t.case(a.c >= 2.0 / (E * E) && a.c < 1.0 / E, || format!("c = {}", a.c));
    checks.push(t.done());

    let mut t = Tally::new(S, "split_construction_exact");
    let r = split_construction(3, 1, 300, 1.0 / 3.0)?;
    let want = Rational::new(1_990_000.into(), 4_455_100.into());
    t.case(r.achieved.as_ref() == Some(&want), || format!("achieved {:?}", r.achieved.map(|q| q.to_string())));
    checks.push(t.done());

    let mut t = Tally::new(S, "split_limits");
    let one = split_limit(100, 1, 0.01);
    let two = split_limit(200, 2, 0.01);
    t.case(close(one, 1.0 / E, 0.002), || format!("k = 100, r = 1: {one}"));
    t.case(close(two, 2.0 / (E * E), 0.01), || format!("k = 200, r = 2: {two}"));
    checks.push(t.done());
    Ok(checks)
}

pub fn search() -> Result<Vec<Check>> {
    const S: &str = "search";
    let mut checks = Vec::new();

    let mut t = Tally::new(S, "path_on_three_in_four_vertices");
    let r = ind_exact(&Graph::path(3), 4)?;
    t.case(r.value.is_one() && r.witness.is_isomorphic(&Graph::cycle(4)), || {
        format!("value {}, witness {}", r.value, r.witness)
    });
    checks.push(t.done());

    let mut t = Tally::new(S, "monotone_in_host_order");
    for h in enumerate_graphs(4)? {
        let mut prev = ind_exact(&h, 4)?.value;
        for n in 5..=8 {
            let v = ind_exact(&h, n)?.value;
            t.case(v <= prev, || format!("{h}: ind at n = {n} is {v}, above {prev}"));
            prev = v;
        }
    }
    checks.push(t.done());

    let mut t = Tally::new(S, "complement_symmetry");
    for h in graphs_up_to(6)? {
        for n in h.n()..=6 {
            let a = ind_exact(&h, n)?.value;
            let b = ind_exact(&h.complement(), n)?.value;
            t.case(a == b, || format!("{h} at n = {n}: {a} vs {b}"));
        }
    }
    checks.push(t.done());
    Ok(checks)
}

pub fn coloring(seed: u64) -> Result<Vec<Check>> {
    const S: &str = "coloring";
    let g = Graph::path(3).with_isolated(7);
    let h = Graph::path(3).with_isolated(2);
    let s = simulate(&g, &h, 100_000, seed, None)?;
    let v = &s.violations;
    let rate = |f: &inducibility::coloring::Frequency| (f.rate.unwrap_or(0.0), f.stderr.unwrap_or(0.0));

    let mut checks = Vec::new();
    let mut t = Tally::new(S, "event_inside_a1_or_a2");
    t.case(v.e_outside_a1_a2 == 0, || format!("{} trials", v.e_outside_a1_a2));
    checks.push(t.done());

    let mut t = Tally::new(S, "isolated_vertices_black");
    t.case(v.isolated_not_black == 0, || format!("{} trials", v.isolated_not_black));
    checks.push(t.done());

    let mut t = Tally::new(S, "trace_structure");
    t.case(v.l_out_of_range == 0, || format!("{} trials with L out of range", v.l_out_of_range));
    t.case(v.too_many_non_black == 0, || format!("{} trials with too many non-black terms", v.too_many_non_black));
    t.case(v.bright_without_a1 == 0, || format!("{} bright trials outside A1", v.bright_without_a1));
    checks.push(t.done());

    let (a1e, a1e_se) = rate(&s.a1_given_e);
    let mut t = Tally::new(S, "a1_given_e_at_least_one_third").detail(format!("{a1e:.6} ± {a1e_se:.6}"));
    t.case(s.a1_given_e.rate.is_some() && a1e >= 1.0 / 3.0 - 3.0 * a1e_se, || format!("{a1e}"));
    checks.push(t.done());

    let (a1nb, a1nb_se) = rate(&s.a1_not_b);
    let mut t = Tally::new(S, "a1_without_b_capped").detail(format!("{a1nb:.6} ± {a1nb_se:.6}"));
    t.case(a1nb <= 2.0 / (E * E) + 4.0 * a1nb_se, || format!("{a1nb}"));
    checks.push(t.done());

    let (a2, a2_se) = rate(&s.a2);
    let mut t = Tally::new(S, "a2_capped").detail(format!("{a2:.6} ± {a2_se:.6}"));
    t.case(a2 <= 1.0 / E + 4.0 * a2_se, || format!("{a2}"));
    checks.push(t.done());
    Ok(checks)
}
