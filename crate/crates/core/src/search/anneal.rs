//! Simulated annealing over single edge flips, with resumable checkpoints.
//!
//! Densities are tracked as exact copy counts. A flip of `{u, v}` only
//! changes subsets containing both endpoints, so each move recounts just
//! those.

use std::fs;
use std::path::Path;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_orders, IndMode, IndResult};
use crate::density::{count_induced, InducedMatcher};
use crate::error::{Error, Result};
use crate::exact::{binomial, parse_rational, ratio, ser_rational, Rational};
use crate::graph::{Graph, VertexSet};

/// Largest host order for local search.
pub const LOCAL_SEARCH_LIMIT: usize = 40;

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnealParams {
    /// Starting temperature, in density units.
    pub t0: f64,
    /// Geometric cooling factor applied after every move.
    pub cooling: f64,
    /// Non-improving moves before jumping back to the best graph and reheating.
    pub restart_after: u64,
    /// Checkpoint interval in moves; the final state is always written.
    pub checkpoint_every: u64,
}

impl Default for AnnealParams {
    fn default() -> Self {
        AnnealParams {
            t0: 0.05,
            cooling: 0.995,
            restart_after: 100_000,
            checkpoint_every: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TracePoint {
    pub iteration: u64,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalSearchReport {
    #[serde(flatten)]
    pub result: IndResult,
    pub iterations: u64,
    pub restarts: u64,
    /// Best-so-far values reached during this call, starting with the value
    /// it resumed from.
    pub trace: Vec<TracePoint>,
}

#[derive(Serialize, Deserialize)]
struct RngState {
    seed: String,
    stream: u64,
    word_pos: String,
}

impl RngState {
    fn save(rng: &ChaCha8Rng) -> Self {
        RngState {
            seed: rng.get_seed().iter().map(|b| format!("{b:02x}")).collect(),
            stream: rng.get_stream(),
            word_pos: rng.get_word_pos().to_string(),
        }
    }

    fn restore(&self) -> Result<ChaCha8Rng> {
        let bad = || Error::CorruptState("unreadable rng state".into());
        if self.seed.len() != 64 {
            return Err(bad());
        }
        let mut seed = [0u8; 32];
        for (i, b) in seed.iter_mut().enumerate() {
            *b = u8::from_str_radix(self.seed.get(2 * i..2 * i + 2).ok_or_else(bad)?, 16).map_err(|_| bad())?;
        }
        let mut rng = ChaCha8Rng::from_seed(seed);
        rng.set_stream(self.stream);
        rng.set_word_pos(self.word_pos.parse::<u128>().map_err(|_| bad())?);
        Ok(rng)
    }
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    version: u32,
    h: String,
    n: usize,
    seed: u64,
    t0: f64,
    cooling: f64,
    restart_after: u64,
    iteration: u64,
    restarts: u64,
    non_improving: u64,
    /// Bit pattern of the current temperature, so resuming is exact.
    temperature_bits: u64,
    temperature: f64,
    current: String,
    best: String,
    best_density: String,
    rng: RngState,
}

struct State {
    rng: ChaCha8Rng,
    current: Graph,
    current_count: u64,
    best: Graph,
    best_count: u64,
    temperature: f64,
    iteration: u64,
    restarts: u64,
    non_improving: u64,
}

fn exact_count(h: &Graph, g: &Graph) -> Result<u64> {
    count_induced(h, g)?
        .to_u64()
        .ok_or_else(|| Error::Invariant("copy count exceeds 64 bits".into()))
}

fn fresh(h: &Graph, n: usize, seed: u64, params: &AnnealParams) -> Result<State> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = h.n();
    let pairs = k * k.saturating_sub(1) / 2;
    let p = if pairs == 0 { 0.5 } else { h.edge_count() as f64 / pairs as f64 };
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    let current = Graph::from_edges(n, &edges)?;
    let count = exact_count(h, &current)?;
    Ok(State {
        rng,
        best: current.clone(),
        current,
        current_count: count,
        best_count: count,
        temperature: params.t0,
        iteration: 0,
        restarts: 0,
        non_improving: 0,
    })
}

fn load(path: &Path, h: &Graph, n: usize, seed: u64, params: &AnnealParams, total: u64) -> Result<State> {
    let corrupt = |m: String| Error::CorruptState(format!("{}: {m}", path.display()));
    let text = fs::read_to_string(path)?;
    let cp: Checkpoint = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
    if cp.version != CHECKPOINT_VERSION {
        return Err(corrupt(format!("version {} is not {CHECKPOINT_VERSION}", cp.version)));
    }
    if cp.h != h.to_graph6() || cp.n != n || cp.seed != seed {
        return Err(corrupt(format!(
            "checkpoint is for h = {}, n = {}, seed = {}, not h = {}, n = {n}, seed = {seed}",
            cp.h,
            cp.n,
            cp.seed,
            h.to_graph6()
        )));
    }
    if cp.t0 != params.t0 || cp.cooling != params.cooling || cp.restart_after != params.restart_after {
        return Err(corrupt("annealing schedule differs from the requested one".into()));
    }
    let parse = |s: &str| -> Result<Graph> {
        let g: Graph = s.parse().map_err(|e: Error| corrupt(e.to_string()))?;
        if g.n() != n {
            return Err(corrupt(format!("stored graph has {} vertices", g.n())));
        }
        Ok(g)
    };
    let (current, best) = (parse(&cp.current)?, parse(&cp.best)?);
    let best_count = exact_count(h, &best)?;
    let stored = parse_rational(&cp.best_density).map_err(|e| corrupt(e.to_string()))?;
    if stored != ratio(best_count, total) {
        return Err(corrupt(format!(
            "stored best density {} but the stored graph has {}",
            cp.best_density,
            ratio(best_count, total)
        )));
    }
    Ok(State {
        rng: cp.rng.restore()?,
        current_count: exact_count(h, &current)?,
        current,
        best,
        best_count,
        temperature: f64::from_bits(cp.temperature_bits),
        iteration: cp.iteration,
        restarts: cp.restarts,
        non_improving: cp.non_improving,
    })
}

fn save(path: &Path, h: &Graph, seed: u64, params: &AnnealParams, st: &State, total: u64) -> Result<()> {
    let cp = Checkpoint {
        version: CHECKPOINT_VERSION,
        h: h.to_graph6(),
        n: st.current.n(),
        seed,
        t0: params.t0,
        cooling: params.cooling,
        restart_after: params.restart_after,
        iteration: st.iteration,
        restarts: st.restarts,
        non_improving: st.non_improving,
        temperature_bits: st.temperature.to_bits(),
        temperature: st.temperature,
        current: st.current.to_graph6(),
        best: st.best.to_graph6(),
        best_density: ratio(st.best_count, total).to_string(),
        rng: RngState::save(&st.rng),
    };
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_string_pretty(&cp).expect("checkpoint serializes"))?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Annealing search for a good `n`-vertex host, run until `iters` total moves.
///
/// With a checkpoint path, an existing file is resumed (and must match the
/// arguments) and the state is written back periodically and at the end, so
/// a run split across calls ends exactly where an uninterrupted one does.
pub fn ind_local_search(
    h: &Graph,
    n: usize,
    iters: u64,
    seed: u64,
    checkpoint: Option<&Path>,
    params: &AnnealParams,
) -> Result<LocalSearchReport> {
    check_orders(h, n)?;
    if n > LOCAL_SEARCH_LIMIT {
        return Err(Error::unsupported("host order for local search", LOCAL_SEARCH_LIMIT as u128, n as u128));
    }
    if !(params.t0 > 0.0 && params.cooling > 0.0 && params.cooling <= 1.0) {
        return Err(Error::input("need t0 > 0 and 0 < cooling <= 1"));
    }
    let total = binomial(n as u64, h.n() as u64)
        .to_u64()
        .ok_or_else(|| Error::unsupported("subset count", u64::MAX as u128, u128::MAX))?;
    let mut st = match checkpoint {
        Some(path) if path.exists() => load(path, h, n, seed, params, total)?,
        _ => fresh(h, n, seed, params)?,
    };
    if st.iteration > iters {
        return Err(Error::input(format!("checkpoint is already at move {} > {iters}", st.iteration)));
    }
    let matcher = InducedMatcher::new(h);
    let mut trace = vec![TracePoint {
        iteration: st.iteration,
        value: ratio(st.best_count, total),
    }];
    while st.iteration < iters && n >= 2 {
        let u = st.rng.gen_range(0..n);
        let mut v = st.rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        let pair = VertexSet::singleton(u).union(VertexSet::singleton(v));
        let before = matcher.count_with(st.current.rows(), pair, VertexSet::EMPTY);
        st.current.toggle_edge(u, v);
        let after = matcher.count_with(st.current.rows(), pair, VertexSet::EMPTY);
        let delta = after as f64 - before as f64;
        let accept = after >= before || st.rng.gen::<f64>() < (delta / total as f64 / st.temperature).exp();
        if accept {
            st.current_count = st.current_count + after - before;
        } else {
            st.current.toggle_edge(u, v);
        }
        if st.current_count > st.best_count {
            st.best = st.current.clone();
            st.best_count = st.current_count;
            st.non_improving = 0;
            trace.push(TracePoint {
                iteration: st.iteration + 1,
                value: ratio(st.best_count, total),
            });
        } else {
            st.non_improving += 1;
        }
        st.temperature *= params.cooling;
        if st.non_improving >= params.restart_after {
            st.current = st.best.clone();
            st.current_count = st.best_count;
            st.temperature = params.t0;
            st.non_improving = 0;
            st.restarts += 1;
        }
        st.iteration += 1;
        if let Some(path) = checkpoint {
            if params.checkpoint_every > 0 && st.iteration % params.checkpoint_every == 0 {
                save(path, h, seed, params, &st, total)?;
            }
        }
    }
    if let Some(path) = checkpoint {
        save(path, h, seed, params, &st, total)?;
    }
    Ok(LocalSearchReport {
        result: IndResult {
            value: ratio(st.best_count, total),
            witness: st.best,
            mode: IndMode::LowerBound,
        },
        iterations: st.iteration,
        restarts: st.restarts,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::induced_density;
    use crate::search::ind_exact;

    #[test]
    fn finds_c4_for_p3() {
        let p3 = Graph::path(3);
        let r = ind_local_search(&p3, 4, 10_000, 3, None, &AnnealParams::default()).unwrap();
        assert_eq!(r.result.value, ind_exact(&p3, 4).unwrap().value);
        assert_eq!(r.result.mode, IndMode::LowerBound);
        assert!(r.trace.windows(2).all(|w| w[0].value < w[1].value));
    }

    #[test]
    fn zero_iterations_give_seed_graph() {
        let p3 = Graph::path(3);
        let r = ind_local_search(&p3, 7, 0, 9, None, &AnnealParams::default()).unwrap();
        let st = fresh(&p3, 7, 9, &AnnealParams::default()).unwrap();
        assert_eq!(r.result.witness, st.current);
        assert_eq!(r.result.value, induced_density(&p3, &st.current).unwrap().density);
    }

    #[test]
    fn resume_matches_uninterrupted() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        let h = Graph::path(4);
        let params = AnnealParams {
            checkpoint_every: 700,
            restart_after: 500,
            ..AnnealParams::default()
        };
        let full = ind_local_search(&h, 9, 3000, 5, None, &params).unwrap();
        ind_local_search(&h, 9, 1234, 5, Some(&path), &params).unwrap();
        let resumed = ind_local_search(&h, 9, 3000, 5, Some(&path), &params).unwrap();
        assert_eq!(resumed.result, full.result);
        assert_eq!(resumed.restarts, full.restarts);
        let again = ind_local_search(&h, 9, 3000, 5, Some(&path), &params).unwrap();
        assert_eq!(again.result, full.result);
    }

    #[test]
    fn bad_checkpoints_are_refused() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        let h = Graph::path(3);
        let params = AnnealParams::default();
        ind_local_search(&h, 6, 100, 1, Some(&path), &params).unwrap();
        assert!(matches!(ind_local_search(&h, 6, 200, 2, Some(&path), &params), Err(Error::CorruptState(_))));
        let text = fs::read_to_string(&path).unwrap();
        let mut cp: serde_json::Value = serde_json::from_str(&text).unwrap();
        cp["best_density"] = "1/1".into();
        fs::write(&path, cp.to_string()).unwrap();
        assert!(matches!(ind_local_search(&h, 6, 200, 1, Some(&path), &params), Err(Error::CorruptState(_))));
        fs::write(&path, "{ not json").unwrap();
        assert!(matches!(ind_local_search(&h, 6, 200, 1, Some(&path), &params), Err(Error::CorruptState(_))));
    }
}
