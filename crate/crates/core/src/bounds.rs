//! Closed-form upper bounds on inducibility and the case split that picks one.
//!
//! Every value here is the finite part of an asymptotic statement; the
//! `o(1)` corrections are never added and reports say so.

use std::f64::consts::{E, PI};

use serde::Serialize;

use crate::brightness::{brightness_exact, lower_bounds_from_profile};
use crate::error::{Error, Result};
use crate::exact::to_f64;
use crate::graph::SparseGraph;

/// `φ(s) = s^s / (s! e^s)`, the largest point probability of a Poisson-like
/// count with mean `s`.
pub fn phi(s: u64) -> Result<f64> {
    if s == 0 {
        return Err(Error::precondition("phi needs s >= 1"));
    }
    Ok(ln_phi(s).exp())
}

/// `ln φ(s)`. Small `s` by direct product; otherwise the Stirling series, in
/// which the large terms cancel analytically.
fn ln_phi(s: u64) -> f64 {
    let x = s as f64;
    if s < 20 {
        let prod: f64 = (1..=s).map(|i| x / i as f64).product();
        return prod.ln() - x;
    }
    let x2 = x * x;
    -0.5 * (2.0 * PI * x).ln() - 1.0 / (12.0 * x) + 1.0 / (360.0 * x * x2) - 1.0 / (1260.0 * x * x2 * x2)
        + 1.0 / (1680.0 * x * x2 * x2 * x2)
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::input(format!("{name} = {v} must lie in [0, 1]")));
    }
    Ok(())
}

/// `φ(s) · ind(H')` for `s` high-degree vertices.
pub fn lemma31_part1(s: u64, ind_hprime: f64) -> Result<f64> {
    check_unit("ind(H')", ind_hprime)?;
    Ok(phi(s).map_err(|_| Error::input("s must be at least 1"))? * ind_hprime)
}

/// `φ(s) · φ(t)`.
pub fn lemma31_part2(s: u64, t: u64) -> Result<f64> {
    if s == 0 || t == 0 {
        return Err(Error::input("s and t must be at least 1"));
    }
    Ok(phi(s)? * phi(t)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Lemma32 {
    pub f: u64,
    pub value: f64,
}

/// `f = ⌊√(β/(τε))⌋` and `2 (φ(τ)/β)^f`.
pub fn lemma32_bound(tau: u64, beta: f64, eps: f64) -> Result<Lemma32> {
    if tau == 0 || !(beta > 0.0 && beta <= 1.0) || !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::input(format!("need tau >= 1, 0 < beta <= 1, eps > 0; got {tau}, {beta}, {eps}")));
    }
    let x = beta / (tau as f64 * eps);
    // floor of the square root, robust to rounding at perfect squares
    let mut f = x.sqrt().floor() as u64;
    let slack = x * (1.0 + 1e-12);
    while ((f + 1) * (f + 1)) as f64 <= slack {
        f += 1;
    }
    while f > 0 && (f * f) as f64 > slack {
        f -= 1;
    }
    let value = 2.0 * (f as f64 * (ln_phi(tau) - beta.ln())).exp();
    Ok(Lemma32 { f, value })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeGapReport {
    pub a: f64,
    pub b: f64,
    pub delta: f64,
    pub s: usize,
    #[serde(rename = "S")]
    pub big_s: Vec<usize>,
}

/// Finds `a < b <= eps` with `b - a = δ`, no degree in `(ak, bk)`, and
/// `1 <= |{deg >= bk}| <= 2C/δ`, using `δ = ε²/(8C)`.
pub fn find_degree_gap(h: &SparseGraph, eps: f64, c: f64) -> Result<DegreeGapReport> {
    if !(eps > 0.0 && eps < 1.0) || !(c > 0.0 && c.is_finite()) {
        return Err(Error::input(format!("need 0 < eps < 1 and C > 0; got {eps}, {c}")));
    }
    let k = h.n() as f64;
    let p = h.degree_profile();
    let ell = p.edge_count as f64;
    if ell > c * k {
        return Err(Error::precondition(format!("{} edges exceed C k = {}", p.edge_count, c * k)));
    }
    if (p.max_degree as f64) < eps * k {
        return Err(Error::precondition(format!("max degree {} is below eps k = {}", p.max_degree, eps * k)));
    }
    let mut delta = eps * eps / (8.0 * c);
    // the scan below is guaranteed to succeed once the steps sum past 2C
    loop {
        let top = (eps / delta - 1.0 + 1e-9).floor() as u64;
        let sum = delta * (top * (top + 1)) as f64 / 2.0;
        if sum > 2.0 * c {
            break;
        }
        delta /= 2.0;
    }
    let top = (eps / delta - 1.0 + 1e-9).floor() as u64;
    for i in 1..=top {
        let a = delta * i as f64;
        let b = delta * (i + 1) as f64;
        if p.degrees.iter().any(|&d| (d as f64) > a * k && (d as f64) < b * k) {
            continue;
        }
        let big_s: Vec<usize> = (0..h.n()).filter(|&v| p.degrees[v] as f64 >= b * k).collect();
        let s = big_s.len();
        let report = DegreeGapReport { a, b, delta, s, big_s };
        if s == 0 || s as f64 > 2.0 * c / delta + 1e-9 || s as f64 * b * k > 2.0 * ell + 1e-9 {
            return Err(Error::Invariant(format!("degree gap postcondition failed: {report:?}")));
        }
        return Ok(report);
    }
    Err(Error::Invariant(format!("no empty degree window found for {}", h.to_graph6())))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HighDegreeSplit {
    #[serde(rename = "S")]
    pub big_s: Vec<usize>,
    #[serde(rename = "T")]
    pub big_t: Vec<usize>,
    pub hprime: SparseGraph,
}

/// `S = {deg >= bk}`, `T` = outside vertices not complete to `S`, and the
/// graph left after deleting `S`.
pub fn high_degree_split(h: &SparseGraph, b: f64) -> Result<HighDegreeSplit> {
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::input(format!("b = {b} must lie in (0, 1)")));
    }
    let k = h.n() as f64;
    let (big_s, rest): (Vec<usize>, Vec<usize>) = (0..h.n()).partition(|&v| h.degree(v) as f64 >= b * k);
    let big_t = rest
        .iter()
        .copied()
        .filter(|&v| !big_s.iter().all(|&u| h.has_edge(u, v)))
        .collect();
    Ok(HighDegreeSplit {
        hprime: h.induced(&rest),
        big_s,
        big_t,
    })
}

/// `(2 + 3e²α) / (2 + (e - 2)ν) · (1/e) + 2α`.
pub fn lemma51_bound(alpha: f64, nu: f64) -> Result<f64> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::input(format!("alpha = {alpha} must be nonnegative")));
    }
    check_unit("nu", nu)?;
    Ok((2.0 + 3.0 * E * E * alpha) / (2.0 + (E - 2.0) * nu) / E + 2.0 * alpha)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SparseAlpha {
    /// Threshold: the sparse bound with `ν = 1/12` stays below `1/e` exactly for `α` below this.
    pub alpha_star: f64,
    /// The `α` actually used, half the threshold.
    pub alpha: f64,
    pub c: f64,
}

/// Bisects for the largest `α` with `lemma51_bound(α, 1/12) < 1/e`.
pub fn find_sparse_alpha() -> SparseAlpha {
    let g = |a: f64| lemma51_bound(a, 1.0 / 12.0).expect("valid arguments") - 1.0 / E;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha = lo / 2.0;
    SparseAlpha {
        alpha_star: lo,
        alpha,
        c: lemma51_bound(alpha, 1.0 / 12.0).expect("valid arguments"),
    }
}

/// Largest `ε` with `2 (2/e)^{√(1/(8Cε)) - 1} <= target`.
pub fn epsilon_for_gap_condition(c: f64, target: f64) -> Result<f64> {
    if !(c > 0.0) || !(target > 0.0 && target < 2.0) {
        return Err(Error::input(format!("need C > 0 and 0 < target < 2; got {c}, {target}")));
    }
    let x = (target / 2.0).ln() / (2.0 / E).ln();
    let root = 1.0 + x;
    Ok(1.0 / (8.0 * c * root * root))
}

/// Whether the hypotheses of the non-uniform-degree lemma hold: at most `Ck`
/// edges and no degree class above `βk`.
pub fn lemma33_predicate(h: &SparseGraph, beta: f64, c: f64) -> Result<bool> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::input(format!("beta = {beta} must lie in (0, 1)")));
    }
    let k = h.n() as f64;
    let p = h.degree_profile();
    Ok(p.edge_count as f64 <= c * k && p.k_hist.values().all(|&cnt| cnt as f64 <= beta * k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    HighDegreeS,
    HighDegreeSt,
    UniformLowDegree,
    NonUniform,
    SparseCore,
    DenseExternal,
    /// Fewer than two edges after normalization: no theorem applies.
    Excluded,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct BoundParams {
    pub gamma: Option<f64>,
    #[serde(rename = "C")]
    pub c: Option<f64>,
    pub eps: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundInputs {
    pub k: usize,
    pub edges: usize,
    pub m: usize,
    pub max_degree: usize,
    pub gamma: Option<f64>,
    #[serde(rename = "C")]
    pub c: f64,
    pub eps: f64,
    pub alpha: f64,
    pub beta: f64,
    pub nu: Option<f64>,
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub tau: Option<usize>,
    pub f: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub regime: Regime,
    pub finite_value: Option<f64>,
    pub asymptotic_only: bool,
    /// The analysis ran on the complement, which has the same inducibility.
    pub complemented: bool,
    pub inputs: BoundInputs,
    pub gap: Option<DegreeGapReport>,
    pub citation: String,
}

/// Brightness used by the sparse bound: exact for small cores, otherwise the
/// best proven lower bound (the bound is decreasing in `ν`, so this is safe).
fn nu_for_bound(h: &SparseGraph) -> Result<f64> {
    let core = h.induced(&h.non_isolated());
    if let Ok(small) = core.to_graph() {
        match brightness_exact(&small) {
            Ok(v) => return Ok(to_f64(&v)),
            Err(Error::Unsupported { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let b = lower_bounds_from_profile(&h.degree_profile(), |u, v| h.has_edge(u, v))?;
    Ok([to_f64(&b.lb_m2), to_f64(&b.lb_m1), to_f64(&b.special_m1), 1.0 / 12.0]
        .into_iter()
        .fold(0.0, f64::max))
}

/// Orders a graph and its complement when both have exactly half the pairs
/// as edges, so the choice does not depend on labeling.
fn prefer_complement(h: &SparseGraph, comp: &SparseGraph) -> bool {
    match (h.to_graph(), comp.to_graph()) {
        (Ok(a), Ok(b)) => b.canonical_code() < a.canonical_code(),
        _ => {
            let sorted = |g: &SparseGraph| {
                let mut d = g.degree_profile().degrees;
                d.sort_unstable();
                d
            };
            sorted(comp) < sorted(h)
        }
    }
}

/// Picks the applicable case of the upper-bound argument and evaluates its
/// finite part.
pub fn regime_selector(h: &SparseGraph, params: &BoundParams) -> Result<BoundReport> {
    let c = params.c.unwrap_or(1.0);
    let eps = params.eps.unwrap_or(0.5);
    let alpha = params.alpha.unwrap_or(0.1);
    let beta = params.beta.unwrap_or((1.0 - alpha / 2.0).max(0.5));
    if !(c > 0.0) || !(eps > 0.0 && eps < 1.0) || !(alpha > 0.0) || !(beta > 0.0 && beta < 1.0) {
        return Err(Error::input("need C > 0, 0 < eps < 1, alpha > 0, 0 < beta < 1"));
    }

    let k = h.n();
    let half = k * k.saturating_sub(1) / 2;
    let ell0 = h.edge_count();
    let comp = h.complement();
    // at exactly half the pairs both sides qualify; pick one canonically
    let complemented = 2 * ell0 > half || (2 * ell0 == half && prefer_complement(h, &comp));
    let g = if complemented { comp } else { h.clone() };
    let p = g.degree_profile();
    let kf = k as f64;
    let mut inputs = BoundInputs {
        k,
        edges: p.edge_count,
        m: p.m,
        max_degree: p.max_degree,
        gamma: params.gamma,
        c,
        eps,
        alpha,
        beta,
        nu: None,
        s: None,
        t: None,
        tau: None,
        f: None,
    };
    let report = |regime, finite_value: Option<f64>, inputs, gap, citation: &str| BoundReport {
        regime,
        asymptotic_only: finite_value.is_none(),
        finite_value,
        complemented,
        inputs,
        gap,
        citation: citation.to_string(),
    };

    if p.edge_count < 2 {
        return Ok(report(Regime::Excluded, Some(1.0), inputs, None, "fewer than two edges: only the trivial bound 1 applies"));
    }
    if p.edge_count as f64 >= c * kf {
        return Ok(report(
            Regime::DenseExternal,
            None,
            inputs,
            None,
            "at least Ck edges: Kwan-Sudakov-Tran bound ind(H) <= gamma for C = C(gamma)",
        ));
    }
    if p.m as f64 <= alpha * kf {
        let nu = nu_for_bound(&g)?;
        inputs.nu = Some(nu);
        let value = lemma51_bound(p.m as f64 / kf, nu)?;
        return Ok(report(
            Regime::SparseCore,
            Some(value),
            inputs,
            None,
            "few non-isolated vertices: sparse bound (2 + 3e^2 a)/(2 + (e-2) nu) / e + 2a with a = m/k",
        ));
    }
    if p.max_degree as f64 >= eps * kf {
        let gap = find_degree_gap(&g, eps, c)?;
        let split = high_degree_split(&g, gap.b)?;
        let (s, t) = (gap.s, split.big_t.len());
        inputs.s = Some(s);
        inputs.t = Some(t);
        if t >= 1 {
            let value = lemma31_part2(s as u64, t as u64)?;
            return Ok(report(
                Regime::HighDegreeSt,
                Some(value),
                inputs,
                Some(gap),
                "high-degree vertices with non-uniform attachments: phi(s) phi(t)",
            ));
        }
        let hp = &split.hprime;
        let trivial = hp.edge_count() == 0 || hp.edge_count() == hp.n() * hp.n().saturating_sub(1) / 2;
        let ind_hprime = if trivial { 1.0 } else { 1.0 / E };
        let value = lemma31_part1(s as u64, ind_hprime)?;
        return Ok(report(
            Regime::HighDegreeS,
            Some(value),
            inputs,
            Some(gap),
            "high-degree vertices: phi(s) ind(H'), with ind(H') <= 1/e unless H' is complete or empty",
        ));
    }
    // largest degree class reaching beta k, if any
    let dominant = p
        .k_hist
        .iter()
        .filter(|(_, &cnt)| cnt as f64 >= beta * kf)
        .max_by_key(|(_, &cnt)| cnt)
        .map(|(&d, _)| d);
    match dominant {
        Some(tau) if tau >= 1 => {
            let l = lemma32_bound(tau as u64, beta, eps)?;
            inputs.tau = Some(tau);
            inputs.f = Some(l.f);
            Ok(report(
                Regime::UniformLowDegree,
                Some(l.value),
                inputs,
                None,
                "low maximum degree with a dominant degree class: 2 (phi(tau)/beta)^f",
            ))
        }
        Some(_) => Ok(report(
            Regime::SparseCore,
            None,
            inputs,
            None,
            "isolated vertices dominate: Fox-Sauermann bound ind(H) <= gamma once D(gamma) <= m <= k/32",
        )),
        None => Ok(report(
            Regime::NonUniform,
            None,
            inputs,
            None,
            "no dominant degree class and at most Ck edges: ind(H) = o(1)",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn phi_values() {
        assert!(close(phi(1).unwrap(), 1.0 / E, 1e-15));
        assert!(close(phi(2).unwrap(), 2.0 / (E * E), 1e-15));
        assert!(close(phi(3).unwrap(), 27.0 / (6.0 * E.powi(3)), 1e-15));
        assert!(phi(0).is_err());
        // the two evaluation paths agree where they meet
        for s in 15u64..25 {
            let x = s as f64;
            let direct: f64 = (1..=s).map(|i| x / i as f64).product::<f64>() * (-x).exp();
            assert!(((phi(s).unwrap() - direct) / direct).abs() < 1e-12, "s = {s}");
        }
        assert!(phi(1000).unwrap().is_finite());
    }

    #[test]
    fn lemma31_values() {
        assert!(close(lemma31_part1(1, 1.0 / E).unwrap(), 1.0 / (E * E), 1e-15));
        assert!(close(lemma31_part1(1, 1.0).unwrap(), 1.0 / E, 1e-15));
        assert!(close(lemma31_part1(2, 1.0).unwrap(), 2.0 / (E * E), 1e-15));
        assert!(lemma31_part1(1, 1.5).is_err());
        assert!(close(lemma31_part2(1, 1).unwrap(), 1.0 / (E * E), 1e-15));
        assert!(close(lemma31_part2(2, 1).unwrap(), 2.0 / E.powi(3), 1e-15));
        assert_eq!(lemma31_part2(1, 2).unwrap(), lemma31_part2(2, 1).unwrap());
    }

    #[test]
    fn lemma32_values() {
        let l = lemma32_bound(1, 0.5, 1.0 / 32.0).unwrap();
        assert_eq!(l.f, 4);
        assert!(close(l.value, 32.0 / E.powi(4), 1e-12));
        let l = lemma32_bound(1, 1.0, 0.01).unwrap();
        assert_eq!(l.f, 10);
        assert!(close(l.value, 2.0 * (-10.0f64).exp(), 1e-16));
        let l = lemma32_bound(3, 0.5, 10.0).unwrap();
        assert_eq!((l.f, l.value), (0, 2.0));
        assert!(lemma32_bound(0, 0.5, 0.1).is_err());
    }

    fn sp(g: &Graph) -> SparseGraph {
        SparseGraph::from(g)
    }

    fn big_star(leaves: usize) -> SparseGraph {
        let edges: Vec<(usize, usize)> = (1..=leaves).map(|v| (0, v)).collect();
        SparseGraph::from_edges(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn gap_examples() {
        let star = big_star(99);
        let g = find_degree_gap(&star, 0.5, 1.0).unwrap();
        assert_eq!(g.delta, 1.0 / 32.0);
        assert!(close(g.a * 100.0, 3.125, 1e-12) && close(g.b * 100.0, 6.25, 1e-12));
        assert_eq!(g.s, 1);
        assert_eq!(g.big_s, vec![0]);
        assert!(matches!(find_degree_gap(&sp(&Graph::path(4)), 0.9, 1.0), Err(Error::Precondition(_))));
    }

    #[test]
    fn split_examples() {
        let s = high_degree_split(&sp(&Graph::star(3)), 0.5).unwrap();
        assert_eq!((s.big_s, s.big_t), (vec![0], vec![]));
        assert_eq!(s.hprime, SparseGraph::empty(3));
        let s = high_degree_split(&sp(&Graph::complete_bipartite(2, 3)), 0.5).unwrap();
        assert_eq!(s.big_s, vec![0, 1]);
        assert!(s.big_t.is_empty());
        let s = high_degree_split(&sp(&Graph::path(4)), 0.9).unwrap();
        assert!(s.big_s.is_empty() && s.big_t.is_empty());
        assert_eq!(s.hprime, sp(&Graph::path(4)));
    }

    #[test]
    fn lemma51_values() {
        assert!(close(lemma51_bound(0.0, 1.0).unwrap(), 2.0 / (E * E), 1e-15));
        assert!(close(lemma51_bound(0.0, 0.0).unwrap(), 1.0 / E, 1e-15));
        assert!(close(lemma51_bound(0.0, 1.0 / 12.0).unwrap(), 2.0 / (E * (2.0 + (E - 2.0) / 12.0)), 1e-15));
        // the quoted 6-digit value 0.357187 is a truncation of 0.3571893...
        assert!(close(lemma51_bound(0.0, 1.0 / 12.0).unwrap(), 0.357187, 5e-6));
        assert!(lemma51_bound(-0.1, 0.5).is_err());
        assert!(lemma51_bound(0.1, 1.5).is_err());
    }

    #[test]
    fn sparse_alpha_matches_linear_solve() {
        let r = find_sparse_alpha();
        // the bound is affine in alpha: intercept + slope * alpha
        let intercept = lemma51_bound(0.0, 1.0 / 12.0).unwrap();
        let slope = 3.0 * E / (2.0 + (E - 2.0) / 12.0) + 2.0;
        assert!(close(slope, 5.9590, 1e-4));
        let exact = (1.0 / E - intercept) / slope;
        assert!(close(r.alpha_star, exact, 1e-9));
        assert!(close(r.alpha_star, 0.0017942, 5e-7));
        assert!(r.c >= 2.0 / (E * E) && r.c < 1.0 / E);
    }

    #[test]
    fn epsilon_helper_satisfies_condition() {
        for c in [0.5, 1.0, 4.0] {
            let eps = epsilon_for_gap_condition(c, 2.0 / (E * E)).unwrap();
            let lhs = 2.0 * (2.0 / E).powf((1.0 / (8.0 * c * eps)).sqrt() - 1.0);
            assert!(close(lhs, 2.0 / (E * E), 1e-12));
            let smaller = 0.9 * eps;
            assert!(2.0 * (2.0 / E).powf((1.0 / (8.0 * c * smaller)).sqrt() - 1.0) < 2.0 / (E * E));
        }
    }

    #[test]
    fn lemma33_examples() {
        assert!(lemma33_predicate(&sp(&Graph::path(4)), 0.9, 1.0).unwrap());
        assert!(!lemma33_predicate(&sp(&Graph::star(3)), 0.5, 1.0).unwrap());
        assert!(!lemma33_predicate(&sp(&Graph::empty(5)), 0.99, 1.0).unwrap());
    }

    #[test]
    fn selector_examples() {
        let r = regime_selector(&big_star(99), &BoundParams::default()).unwrap();
        assert_eq!(r.regime, Regime::HighDegreeS);
        assert_eq!(r.inputs.s, Some(1));
        assert!(!r.complemented);

        let h = SparseGraph::from_edges(100, &[(0, 1), (1, 2)]).unwrap();
        let r = regime_selector(&h, &BoundParams::default()).unwrap();
        assert_eq!(r.regime, Regime::SparseCore);
        assert!(close(r.finite_value.unwrap(), lemma51_bound(0.03, 1.0 / 3.0).unwrap(), 1e-15));

        let r = regime_selector(&sp(&Graph::complete(6)), &BoundParams::default()).unwrap();
        assert!(r.complemented);
        assert_eq!(r.regime, Regime::Excluded);

        let r = regime_selector(&sp(&Graph::cycle(40)), &BoundParams::default()).unwrap();
        assert_eq!(r.regime, Regime::DenseExternal);
        assert!(r.asymptotic_only && r.finite_value.is_none());
    }
}
