use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

/// Exact and approximate tools for induced subgraph densities and
/// inducibility. Graphs are read and written as graph6; pass `-` to read a
/// graph from stdin (one graph per line, consumed in argument order).
#[derive(Debug, Parser)]
#[command(name = "inducibility", version)]
pub struct Cli {
    /// Emit JSON. This is the only format and the default.
    #[arg(long, global = true)]
    pub json: bool,

    /// Report wall-clock time in `elapsed_ms` (0 otherwise, so that output
    /// is reproducible byte for byte).
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct McArgs {
    /// Monte-Carlo sample count.
    #[arg(long)]
    pub mc: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree profile, vertex classes, taming number and brightness.
    Classify {
        graph: String,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Taming sets: the minimum, a witness grown from a seed set, or a check.
    Tame {
        graph: String,
        /// Grow a taming set from these vertices (comma separated).
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        from: Option<Vec<usize>>,
        /// Check whether these vertices tame the graph.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        check: Option<Vec<usize>>,
        /// Report whether the graph is D-tame.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Brightness: exact for small cores, Monte-Carlo otherwise or on request.
    Brightness {
        graph: String,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Induced density of H in G.
    Density {
        h: String,
        g: String,
        #[command(flatten)]
        mc: McArgs,
        /// Maximum number of subsets an exact count may visit.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// ind(H, n): exact by enumeration, or a lower bound by annealing.
    #[command(group(ArgGroup::new("mode").required(true).args(["exact", "search"])))]
    Ind {
        h: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 100_000)]
        iters: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resume from and periodically save to this file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    #[command(subcommand)]
    Construct(ConstructCmd),
    #[command(subcommand)]
    Bounds(BoundsCmd),
    #[command(subcommand)]
    Proba(ProbaCmd),
    /// Black/green/red coloring of a random vertex stream of G against H.
    SimulateColoring {
        g: String,
        h: String,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Stream length cap per trial (default 50 n k).
        #[arg(long)]
        max_steps: Option<u64>,
    },
    /// Run property suites; exit status 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Appendix,
    Structure,
    Brightness,
    Formulas,
    Search,
    Coloring,
    All,
}

#[derive(Debug, Subcommand)]
pub enum ConstructCmd {
    /// Complete bipartite host with parts of relative size sigma and 1 - sigma.
    Split {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        omit_graph: bool,
    },
    /// G(n, 1/C(k, 2)) aimed at a single edge.
    Gnp {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        omit_graph: bool,
    },
    /// Split host with a clique on the small side, aimed at K_{2,k-2} plus an edge.
    SplitPlusEdge {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        omit_graph: bool,
    },
    /// Blow-up of H along a taming set.
    Blowup {
        h: String,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        v0: Vec<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        omit_graph: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum BoundsCmd {
    /// s^s / (s! e^s).
    Phi {
        #[arg(long)]
        s: u64,
    },
    /// High-degree bounds; give --ind-hprime, --t, or both.
    #[command(group(ArgGroup::new("part").required(true).multiple(true).args(["ind_hprime", "t"])))]
    Lemma31 {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        ind_hprime: Option<f64>,
        #[arg(long)]
        t: Option<u64>,
    },
    /// Uniform low-degree bound.
    Lemma32 {
        #[arg(long)]
        tau: u64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        eps: f64,
    },
    /// Sparse-core bound as a function of alpha = m/k and brightness.
    Lemma51 {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        nu: f64,
    },
    /// Find a gap in the degree sequence.
    Gap {
        h: String,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        c: f64,
    },
    /// Pick the applicable regime and evaluate its bound.
    Select {
        h: String,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
    },
    /// The alpha used for sparse cores: half the largest alpha keeping the
    /// bound at nu = 1/12 below 1/e.
    Alpha,
}

#[derive(Debug, Subcommand)]
pub enum ProbaCmd {
    /// P[Bin(k, p) = s], or its maximum over p with --max.
    #[command(group(ArgGroup::new("prob").required(true).args(["p", "max"])))]
    Binom {
        #[arg(long)]
        k: u64,
        /// Success probability, "p/q" or a finite decimal.
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        max: bool,
    },
    Hypergeom {
        #[arg(long)]
        population: u64,
        #[arg(long)]
        successes: u64,
        #[arg(long)]
        sample: u64,
        #[arg(long)]
        hits: u64,
    },
    /// Probability that a uniform k-subset of [n] meets each part in exactly s.
    Multi {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<u64>,
        #[arg(long)]
        s: u64,
    },
    /// Admissible interval for lambda at (y, z).
    Lambda {
        #[arg(long)]
        y: f64,
        #[arg(long)]
        z: f64,
    },
}
