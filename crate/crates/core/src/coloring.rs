//! The black/green/red coloring of an i.i.d. uniform vertex stream, run as
//! a simulation so the inclusions between its events can be checked.
//!
//! A term is black when the core of the graph spanned by the earlier blacks
//! plus the term is neither the core of `h` nor the core of `h - v'` for a
//! detectable `v'`. `L` is the index of the `(k-2)`-th black term and `U` the
//! set of blacks up to `L`. Non-black terms up to `L` are red when adding
//! them to `U` gives the core of `h`, and green otherwise; they are colored
//! once `U` is known. Terms after `L` are drawn only as far as needed for
//! the events on the first `k` terms and are not colored.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{canonical_code_of_rows, induced_rows_into, CanonicalCode, Graph, VertexSet};
use crate::stats::{par_map, split_count, substream, SUBSTREAMS};
use crate::structure::classify_vertices;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Black,
    Green,
    Red,
}

/// Online answer for a single term: red and green are only decided later.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepColor {
    Black,
    NonBlack,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub vertex: usize,
    pub color: Color,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TraceFlags {
    /// First `k - 2` terms distinct with core isomorphic to the core of `h`.
    pub e_km2: bool,
    pub e_km1: bool,
    pub e_k: bool,
    pub e: bool,
    pub a1: bool,
    pub a2: bool,
    pub b: bool,
}

fn ser_index<S: Serializer>(l: &Option<usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match l {
        Some(i) => s.serialize_u64(*i as u64),
        None => s.serialize_str("inf"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredTrace {
    /// Colored terms `1..=L` (all drawn terms when `L` was not reached).
    pub steps: Vec<Step>,
    /// All drawn vertices, at least the first `k` when `L` is finite.
    pub draws: Vec<usize>,
    /// 1-based index of the `(k-2)`-th black term; `"inf"` if the run was
    /// truncated first.
    #[serde(rename = "L", serialize_with = "ser_index")]
    pub l: Option<usize>,
    #[serde(rename = "U")]
    pub u: Vec<usize>,
    #[serde(rename = "Y")]
    pub y: usize,
    #[serde(rename = "Z")]
    pub z: usize,
    pub flags: TraceFlags,
    /// Terms that were isolated among the terms so far yet not black.
    pub isolated_not_black: usize,
    /// `E` held and the last two non-isolated arrivals among the first `k`
    /// were both detectable, but `A1` failed.
    pub bright_without_a1: bool,
}

/// Precomputed cores of `h` used by every step.
pub struct Coloring<'a> {
    g: &'a Graph,
    k: usize,
    full: CanonicalCode,
    minus_detectable: HashSet<CanonicalCode>,
}

fn core_code(adj: &[u64], w: VertexSet, buf: &mut Vec<u64>) -> CanonicalCode {
    induced_rows_into(adj, w, buf);
    let live: u64 = (0..buf.len()).filter(|&i| buf[i] != 0).fold(0, |m, i| m | 1 << i);
    let mut core = Vec::with_capacity(live.count_ones() as usize);
    induced_rows_into(buf, VertexSet::from_bits(live), &mut core);
    canonical_code_of_rows(&core)
}

pub fn default_max_steps(n: usize, k: usize) -> u64 {
    50 * n as u64 * k as u64
}

impl<'a> Coloring<'a> {
    pub fn new(g: &'a Graph, h: &Graph) -> Result<Self> {
        let k = h.n();
        if h.edge_count() < 2 {
            return Err(Error::precondition(format!("h needs at least 2 edges, has {}", h.edge_count())));
        }
        if k > g.n() {
            return Err(Error::precondition(format!("h has {k} vertices, g only {}", g.n())));
        }
        let mut buf = Vec::new();
        let full = core_code(h.rows(), h.vertices(), &mut buf);
        let minus_detectable = classify_vertices(h)
            .detectable
            .iter()
            .map(|v| core_code(h.rows(), h.vertices().difference(VertexSet::singleton(v)), &mut buf))
            .collect();
        Ok(Coloring {
            g,
            k,
            full,
            minus_detectable,
        })
    }

    /// Whether `v` is black given the set of earlier black terms.
    pub fn is_black(&self, blacks: VertexSet, v: usize, buf: &mut Vec<u64>) -> bool {
        let code = core_code(self.g.rows(), blacks.union(VertexSet::singleton(v)), buf);
        code != self.full && !self.minus_detectable.contains(&code)
    }

    fn is_full(&self, w: VertexSet, buf: &mut Vec<u64>) -> bool {
        core_code(self.g.rows(), w, buf) == self.full
    }

    /// One trial drawing from `rng`, stopping after `max_steps` terms.
    pub fn trial<R: Rng>(&self, rng: &mut R, max_steps: u64) -> ColoredTrace {
        let n = self.g.n();
        let k = self.k;
        let adj = self.g.rows();
        let mut buf = Vec::with_capacity(k);
        let mut draws = Vec::new();
        let mut black = Vec::new();
        let mut blacks = VertexSet::EMPTY;
        let mut seen = VertexSet::EMPTY;
        let mut l = None;
        let mut isolated_not_black = 0;
        while (draws.len() as u64) < max_steps && (l.is_none() || draws.len() < k) {
            let v = rng.gen_range(0..n);
            draws.push(v);
            if l.is_none() {
                let b = self.is_black(blacks, v, &mut buf);
                if adj[v] & seen.bits() == 0 && !b {
                    isolated_not_black += 1;
                }
                black.push(b);
                if b {
                    blacks.insert(v);
                    if black.iter().filter(|&&x| x).count() == k - 2 {
                        l = Some(draws.len());
                    }
                }
            }
            seen.insert(v);
        }
        let colored = l.unwrap_or(draws.len());
        let steps: Vec<Step> = (0..colored)
            .map(|i| {
                let color = if black[i] {
                    Color::Black
                } else if l.is_some() && self.is_full(blacks.union(VertexSet::singleton(draws[i])), &mut buf) {
                    Color::Red
                } else {
                    Color::Green
                };
                Step { vertex: draws[i], color }
            })
            .collect();
        let (mut y, mut z) = (0, 0);
        if l.is_some() {
            y = steps.iter().filter(|s| s.color == Color::Green).count();
            z = steps.iter().filter(|s| s.color == Color::Red).count();
        }
        let e_j = |j: usize, buf: &mut Vec<u64>| {
            if draws.len() < j {
                return false;
            }
            let w: VertexSet = draws[..j].iter().copied().collect();
            w.len() == j && self.is_full(w, buf)
        };
        let mut flags = TraceFlags {
            e_km2: e_j(k - 2, &mut buf),
            e_km1: e_j(k - 1, &mut buf),
            e_k: e_j(k, &mut buf),
            ..TraceFlags::default()
        };
        flags.e = flags.e_km2 && flags.e_k;
        flags.a1 = l.is_some() && (y, z) == (2, 0);
        flags.a2 = l.is_some() && (y, z) == (0, 1);
        flags.b = l.is_some() && steps.windows(2).any(|w| w[0].color != Color::Black && w[1].color != Color::Black);
        let bright_without_a1 = flags.e && !flags.a1 && last_two_detectable(self.g, &draws[..k]);
        ColoredTrace {
            steps,
            l,
            u: draws[..l.unwrap_or(0)].iter().zip(&black).filter(|(_, &b)| b).map(|(&v, _)| v).collect(),
            draws,
            y,
            z,
            flags,
            isolated_not_black,
            bright_without_a1,
        }
    }
}

/// Whether the last two terms that arrive with a neighbor among earlier
/// terms exist and are both detectable in the graph spanned by `first`.
fn last_two_detectable(g: &Graph, first: &[usize]) -> bool {
    let mut seen = VertexSet::EMPTY;
    let mut positive = Vec::new();
    for &v in first {
        if g.rows()[v] & seen.bits() != 0 {
            positive.push(v);
        }
        seen.insert(v);
    }
    if positive.len() < 2 {
        return false;
    }
    let gk = g.induced(seen);
    let order = seen.to_vec();
    let pos = |v: usize| order.iter().position(|&u| u == v).expect("drawn vertex");
    let det = classify_vertices(&gk).detectable;
    positive[positive.len() - 2..].iter().all(|&v| det.contains(pos(v)))
}

/// Black or not for a single term, computed from scratch.
pub fn color_step(g: &Graph, h: &Graph, black_so_far: &[usize], v: usize) -> Result<StepColor> {
    if v >= g.n() || black_so_far.iter().any(|&u| u >= g.n()) {
        return Err(Error::input(format!("vertex out of range for n = {}", g.n())));
    }
    let ctx = Coloring::new(g, h)?;
    let blacks = black_so_far.iter().copied().collect();
    Ok(if ctx.is_black(blacks, v, &mut Vec::new()) {
        StepColor::Black
    } else {
        StepColor::NonBlack
    })
}

/// A single seeded trial.
pub fn run_trial(g: &Graph, h: &Graph, seed: u64, max_steps: u64) -> Result<ColoredTrace> {
    let ctx = Coloring::new(g, h)?;
    Ok(ctx.trial(&mut ChaCha8Rng::seed_from_u64(seed), max_steps))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Frequency {
    pub count: u64,
    pub of: u64,
    /// `None` when the conditioning event never occurred.
    pub rate: Option<f64>,
    pub stderr: Option<f64>,
}

impl Frequency {
    fn new(count: u64, of: u64) -> Self {
        let rate = (of > 0).then(|| count as f64 / of as f64);
        Frequency {
            count,
            of,
            rate,
            stderr: rate.map(|p| (p * (1.0 - p) / of as f64).sqrt()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Violations {
    /// `E` without `A1` or `A2`.
    pub e_outside_a1_a2: u64,
    /// Terms isolated on arrival that were not black.
    pub isolated_not_black: u64,
    /// `E` with `L` outside `{k-1, k}`.
    pub l_out_of_range: u64,
    /// `E` with more than two non-black terms up to `L`.
    pub too_many_non_black: u64,
    /// `E` with the last two non-isolated arrivals detectable but not `A1`.
    pub bright_without_a1: u64,
}

impl Violations {
    pub fn total(&self) -> u64 {
        self.e_outside_a1_a2 + self.isolated_not_black + self.l_out_of_range + self.too_many_non_black + self.bright_without_a1
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub trials: u64,
    pub seed: u64,
    pub max_steps: u64,
    pub truncated: u64,
    pub e: Frequency,
    pub a1: Frequency,
    pub a2: Frequency,
    pub b: Frequency,
    pub a1_and_e: Frequency,
    pub a2_and_e: Frequency,
    pub b_and_e: Frequency,
    pub a1_not_b: Frequency,
    pub a1_given_e: Frequency,
    pub a2_given_e: Frequency,
    pub b_given_e: Frequency,
    pub violations: Violations,
}

#[derive(Clone, Copy, Default)]
struct Tally {
    truncated: u64,
    e: u64,
    a1: u64,
    a2: u64,
    b: u64,
    a1e: u64,
    a2e: u64,
    be: u64,
    a1nb: u64,
    v: Violations,
}

impl Tally {
    fn add(&mut self, t: &ColoredTrace, k: usize) {
        let f = t.flags;
        self.truncated += u64::from(t.l.is_none());
        self.e += u64::from(f.e);
        self.a1 += u64::from(f.a1);
        self.a2 += u64::from(f.a2);
        self.b += u64::from(f.b);
        self.a1e += u64::from(f.a1 && f.e);
        self.a2e += u64::from(f.a2 && f.e);
        self.be += u64::from(f.b && f.e);
        self.a1nb += u64::from(f.a1 && !f.b);
        self.v.isolated_not_black += t.isolated_not_black as u64;
        if f.e {
            self.v.e_outside_a1_a2 += u64::from(!f.a1 && !f.a2);
            self.v.l_out_of_range += u64::from(!matches!(t.l, Some(l) if l + 1 == k || l == k));
            self.v.too_many_non_black += u64::from(t.y + t.z > 2);
            self.v.bright_without_a1 += u64::from(t.bright_without_a1);
        }
    }

    fn merge(mut self, o: &Tally) -> Tally {
        self.truncated += o.truncated;
        self.e += o.e;
        self.a1 += o.a1;
        self.a2 += o.a2;
        self.b += o.b;
        self.a1e += o.a1e;
        self.a2e += o.a2e;
        self.be += o.be;
        self.a1nb += o.a1nb;
        self.v.e_outside_a1_a2 += o.v.e_outside_a1_a2;
        self.v.isolated_not_black += o.v.isolated_not_black;
        self.v.l_out_of_range += o.v.l_out_of_range;
        self.v.too_many_non_black += o.v.too_many_non_black;
        self.v.bright_without_a1 += o.v.bright_without_a1;
        self
    }
}

/// Runs `trials` independent traces over fixed substreams of `seed` and
/// summarizes event frequencies and inclusion violations.
pub fn simulate(g: &Graph, h: &Graph, trials: u64, seed: u64, max_steps: Option<u64>) -> Result<SimulationSummary> {
    if trials == 0 {
        return Err(Error::input("trials must be at least 1"));
    }
    let ctx = Coloring::new(g, h)?;
    let max_steps = max_steps.unwrap_or_else(|| default_max_steps(g.n(), h.n()));
    let shares = split_count(trials, SUBSTREAMS);
    let t = par_map(SUBSTREAMS, |i| {
        let mut rng = substream(seed, i as u64);
        let mut t = Tally::default();
        for _ in 0..shares[i] {
            t.add(&ctx.trial(&mut rng, max_steps), h.n());
        }
        t
    })
    .iter()
    .fold(Tally::default(), Tally::merge);
    let f = |c| Frequency::new(c, trials);
    Ok(SimulationSummary {
        trials,
        seed,
        max_steps,
        truncated: t.truncated,
        e: f(t.e),
        a1: f(t.a1),
        a2: f(t.a2),
        b: f(t.b),
        a1_and_e: f(t.a1e),
        a2_and_e: f(t.a2e),
        b_and_e: f(t.be),
        a1_not_b: f(t.a1nb),
        a1_given_e: Frequency::new(t.a1e, t.e),
        a2_given_e: Frequency::new(t.a2e, t.e),
        b_given_e: Frequency::new(t.be, t.e),
        violations: t.v,
    })
}
