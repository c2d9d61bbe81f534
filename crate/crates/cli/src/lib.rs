//! Command-line front end. Every command produces one [`CommandResult`]
//! JSON document; [`run`] does the work and `main` only prints and exits.

pub mod args;
pub mod verify;

use std::io::BufRead;
use std::time::Instant;

use inducibility::bounds::{self, BoundParams};
use inducibility::brightness::brightness_report;
use inducibility::coloring::simulate;
use inducibility::constructions::{self, ConstructionReport};
use inducibility::density::{induced_density_mc, induced_density_with_budget, DEFAULT_BUDGET};
use inducibility::exact::{parse_rational, to_f64};
use inducibility::graph::SparseGraph;
use inducibility::proba::{self, HypergeomParams};
use inducibility::search::{ind_exact, ind_local_search, AnnealParams};
use inducibility::structure::{
    classify_vertices, is_D_tame, is_tamed_by, minimal_taming_number, tame_witness_from, TAMING_EXACT_LIMIT,
};
use inducibility::{Graph, VertexSet};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

pub use args::{BoundsCmd, Cli, Command, ConstructCmd, ProbaCmd, Suite};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "INDUCIBILITY_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] inducibility::Error),
    #[error("invalid input: {0}")]
    Usage(String),
}

impl CliError {
    /// 2 for bad input, 3 for preconditions and size limits, 1 for internal
    /// invariant failures.
    pub fn exit_code(&self) -> i32 {
        use inducibility::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                E::Parse { .. } | E::Input(_) | E::CorruptState(_) | E::Io(_) => 2,
                E::Precondition(_) | E::Unsupported { .. } => 3,
                E::Invariant(_) => 1,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub version: String,
    pub elapsed_ms: u64,
}

impl CommandResult {
    /// Pretty JSON with every non-integer number cut to 12 significant digits.
    pub fn to_json(&self) -> String {
        let mut doc = serde_json::to_value(self).expect("results serialize");
        round_floats(&mut doc);
        serde_json::to_string_pretty(&doc).expect("values serialize")
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub result: CommandResult,
    /// False when a verification suite reported a failure.
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().and_then(|x| serde_json::Number::from_f64(round_sig(x))) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Sets the global worker pool from [`THREADS_ENV`] when it is set.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure threads: {e}")))
}

/// Resolves graph arguments; each `-` takes the next non-empty stdin line.
struct GraphArgs<'a> {
    stdin: &'a mut dyn BufRead,
}

impl GraphArgs<'_> {
    fn text(&mut self, arg: &str) -> Result<String> {
        if arg != "-" {
            return Ok(arg.trim().to_string());
        }
        let mut line = String::new();
        loop {
            line.clear();
            let read = self
                .stdin
                .read_line(&mut line)
                .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
            if read == 0 {
                return Err(CliError::Usage("stdin ended before a graph was read".into()));
            }
            if !line.trim().is_empty() {
                return Ok(line.trim().to_string());
            }
        }
    }

    fn graph(&mut self, arg: &str) -> Result<(String, Graph)> {
        let text = self.text(arg)?;
        let g = inducibility::parse_graph6(&text)?;
        Ok((text, g))
    }

    fn sparse(&mut self, arg: &str) -> Result<(String, SparseGraph)> {
        let text = self.text(arg)?;
        let g = SparseGraph::parse_graph6(&text)?;
        Ok((text, g))
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("outputs serialize")
}

fn vertex_set(h: &Graph, vs: &[usize]) -> Result<VertexSet> {
    if let Some(&bad) = vs.iter().find(|&&v| v >= h.n()) {
        return Err(CliError::Usage(format!("vertex {bad} out of range for n = {}", h.n())));
    }
    Ok(vs.iter().copied().collect())
}

fn construction(report: ConstructionReport, omit_graph: bool) -> Value {
    let mut v = to_value(&report);
    v["n"] = json!(report.graph.n());
    v["edges"] = json!(report.graph.edge_count());
    v["density_dominates"] = json!(report.density_dominates());
    if omit_graph {
        v["graph"] = Value::Null;
    }
    v
}

/// Runs one command. Errors carry the exit code through [`CliError::exit_code`].
pub fn run(cli: &Cli, stdin: &mut dyn BufRead) -> Result<Outcome> {
    let start = Instant::now();
    let mut graphs = GraphArgs { stdin };
    let mut passed = true;
    let (command, inputs, outputs) = match &cli.command {
        Command::Classify { graph, mc } => {
            let (text, h) = graphs.graph(graph)?;
            let taming = if h.n() <= TAMING_EXACT_LIMIT {
                let (number, witness) = minimal_taming_number(&h)?;
                json!({ "number": number, "witness": witness })
            } else {
                json!({ "skipped": format!("n = {} exceeds the exact taming limit {TAMING_EXACT_LIMIT}", h.n()) })
            };
            let outputs = json!({
                "n": h.n(),
                "degree_profile": h.degree_profile(),
                "classification": classify_vertices(&h),
                "taming": taming,
                "brightness": brightness_report(&h, mc.mc.map(|s| (s, mc.seed)))?,
            });
            ("classify", json!({ "graph": text, "mc": mc.mc, "seed": mc.seed }), outputs)
        }
        Command::Tame { graph, from, check, d } => {
            let (text, h) = graphs.graph(graph)?;
            let mut out = serde_json::Map::new();
            if let Some(from) = from {
                out.insert("from".into(), to_value(tame_witness_from(&h, vertex_set(&h, from)?)?));
            }
            if let Some(check) = check {
                out.insert("check".into(), json!(is_tamed_by(&h, vertex_set(&h, check)?)?));
            }
            if let Some(d) = d {
                out.insert("d_tame".into(), json!(is_D_tame(&h, *d)?));
            }
            if from.is_none() && check.is_none() && d.is_none() {
                let (number, witness) = minimal_taming_number(&h)?;
                out.insert("number".into(), json!(number));
                out.insert("witness".into(), to_value(witness));
            }
            ("tame", json!({ "graph": text, "from": from, "check": check, "d": d }), Value::Object(out))
        }
        Command::Brightness { graph, mc } => {
            let (text, h) = graphs.graph(graph)?;
            let report = brightness_report(&h, mc.mc.map(|s| (s, mc.seed)))?;
            ("brightness", json!({ "graph": text, "mc": mc.mc, "seed": mc.seed }), to_value(report))
        }
        Command::Density { h, g, mc, budget } => {
            let (h_text, h) = graphs.graph(h)?;
            let (g_text, g) = graphs.graph(g)?;
            let outputs = match mc.mc {
                Some(samples) => to_value(induced_density_mc(&h, &g, samples, mc.seed)?),
                None => {
                    let d = induced_density_with_budget(&h, &g, budget.unwrap_or(DEFAULT_BUDGET))?;
                    let mut v = to_value(&d);
                    v["approx"] = json!(to_f64(&d.density));
                    v
                }
            };
            let inputs = json!({ "h": h_text, "g": g_text, "mc": mc.mc, "seed": mc.seed, "budget": budget });
            ("density", inputs, outputs)
        }
        Command::Ind {
            h,
            n,
            exact,
            iters,
            seed,
            checkpoint,
            ..
        } => {
            let (text, h) = graphs.graph(h)?;
            if *exact {
                let r = ind_exact(&h, *n)?;
                let mut v = to_value(&r);
                v["approx"] = json!(to_f64(&r.value));
                ("ind", json!({ "h": text, "n": n, "mode": "exact" }), v)
            } else {
                let params = AnnealParams::default();
                let r = ind_local_search(&h, *n, *iters, *seed, checkpoint.as_deref(), &params)?;
                let mut v = to_value(&r);
                v["approx"] = json!(to_f64(&r.result.value));
                let inputs = json!({
                    "h": text, "n": n, "mode": "search", "iters": iters, "seed": seed,
                    "checkpoint": checkpoint, "params": params,
                });
                ("ind", inputs, v)
            }
        }
        Command::Construct(c) => match c {
            ConstructCmd::Split { k, r, n, sigma, omit_graph } => {
                let rep = constructions::split_construction(*k, *r, *n, *sigma)?;
                ("construct split", json!({ "k": k, "r": r, "n": n, "sigma": sigma }), construction(rep, *omit_graph))
            }
            ConstructCmd::Gnp { k, n, seed, omit_graph } => {
                let rep = constructions::gnp_construction(*k, *n, *seed)?;
                ("construct gnp", json!({ "k": k, "n": n, "seed": seed }), construction(rep, *omit_graph))
            }
            ConstructCmd::SplitPlusEdge { k, n, omit_graph } => {
                let rep = constructions::split_plus_edge(*k, *n)?;
                ("construct split-plus-edge", json!({ "k": k, "n": n }), construction(rep, *omit_graph))
            }
            ConstructCmd::Blowup { h, v0, n, omit_graph } => {
                let (text, h) = graphs.graph(h)?;
                let rep = constructions::dtame_blowup(&h, vertex_set(&h, v0)?, *n)?;
                ("construct blowup", json!({ "h": text, "v0": v0, "n": n }), construction(rep, *omit_graph))
            }
        },
        Command::Bounds(b) => match b {
            BoundsCmd::Phi { s } => ("bounds phi", json!({ "s": s }), json!({ "phi": bounds::phi(*s)? })),
            BoundsCmd::Lemma31 { s, ind_hprime, t } => {
                let part1 = ind_hprime.map(|i| bounds::lemma31_part1(*s, i)).transpose()?;
                let part2 = t.map(|t| bounds::lemma31_part2(*s, t)).transpose()?;
                let inputs = json!({ "s": s, "ind_hprime": ind_hprime, "t": t });
                ("bounds lemma31", inputs, json!({ "part1": part1, "part2": part2 }))
            }
            BoundsCmd::Lemma32 { tau, beta, eps } => {
                let r = bounds::lemma32_bound(*tau, *beta, *eps)?;
                ("bounds lemma32", json!({ "tau": tau, "beta": beta, "eps": eps }), to_value(r))
            }
            BoundsCmd::Lemma51 { alpha, nu } => {
                let v = bounds::lemma51_bound(*alpha, *nu)?;
                ("bounds lemma51", json!({ "alpha": alpha, "nu": nu }), json!({ "value": v }))
            }
            BoundsCmd::Gap { h, eps, c } => {
                let (text, h) = graphs.sparse(h)?;
                let r = bounds::find_degree_gap(&h, *eps, *c)?;
                ("bounds gap", json!({ "h": text, "eps": eps, "C": c }), to_value(r))
            }
            BoundsCmd::Select { h, gamma, c, eps, alpha, beta } => {
                let (text, h) = graphs.sparse(h)?;
                let params = BoundParams {
                    gamma: *gamma,
                    c: *c,
                    eps: *eps,
                    alpha: *alpha,
                    beta: *beta,
                };
                let r = bounds::regime_selector(&h, &params)?;
                ("bounds select", json!({ "h": text, "params": params }), to_value(r))
            }
            BoundsCmd::Alpha => ("bounds alpha", json!({}), to_value(bounds::find_sparse_alpha())),
        },
        Command::Proba(p) => match p {
            ProbaCmd::Binom { k, p, s, max } => {
                let value = if *max {
                    proba::binom_point_max_bound(*k, *s)?
                } else {
                    let p = p.as_deref().ok_or_else(|| CliError::Usage("--p is required without --max".into()))?;
                    proba::binom_point(*k, &parse_rational(p)?, *s)?
                };
                let outputs = json!({ "value": value.to_string(), "approx": to_f64(&value) });
                ("proba binom", json!({ "k": k, "p": p, "s": s, "max": max }), outputs)
            }
            ProbaCmd::Hypergeom {
                population,
                successes,
                sample,
                hits,
            } => {
                let params = HypergeomParams {
                    population: *population,
                    successes: *successes,
                    sample: *sample,
                    hits: *hits,
                };
                let value = proba::hypergeom_point(&params)?;
                let outputs = json!({ "value": value.to_string(), "approx": to_f64(&value) });
                ("proba hypergeom", to_value(params), outputs)
            }
            ProbaCmd::Multi { n, k, parts, s } => {
                let value = proba::multi_hypergeom_joint(*n, *k, parts, *s)?;
                let outputs = json!({ "value": value.to_string(), "approx": to_f64(&value) });
                ("proba multi", json!({ "n": n, "k": k, "parts": parts, "s": s }), outputs)
            }
            ProbaCmd::Lambda { y, z } => {
                let r = proba::lambda_split(*y, *z)?;
                let mut v = to_value(r);
                v["gap"] = json!(proba::lambda_gap(*y, *z));
                ("proba lambda", json!({ "y": y, "z": z }), v)
            }
        },
        Command::SimulateColoring {
            g,
            h,
            trials,
            seed,
            max_steps,
        } => {
            let (g_text, g) = graphs.graph(g)?;
            let (h_text, h) = graphs.graph(h)?;
            let summary = simulate(&g, &h, *trials, *seed, *max_steps)?;
            let inputs = json!({ "g": g_text, "h": h_text, "trials": trials, "seed": seed, "max_steps": max_steps });
            ("simulate-coloring", inputs, to_value(summary))
        }
        Command::Verify { suite, seed } => {
            let report = verify::run_suite(*suite, *seed)?;
            passed = report.passed;
            ("verify", json!({ "suite": suite.name(), "seed": seed }), to_value(report))
        }
    };
    let elapsed_ms = if cli.timing { start.elapsed().as_millis() as u64 } else { 0 };
    Ok(Outcome {
        result: CommandResult {
            command: command.to_string(),
            inputs,
            outputs,
            version: env!("CARGO_PKG_VERSION").to_string(),
            elapsed_ms,
        },
        passed,
    })
}
