//! `ind(H, n)`: the largest induced density of `H` over `n`-vertex graphs.
//! Exact for small `n` by enumerating isomorphism classes, and a lower bound
//! with a witness by simulated annealing beyond that.

mod anneal;
mod enumerate;

use serde::Serialize;

pub use anneal::{ind_local_search, AnnealParams, LocalSearchReport, TracePoint, CHECKPOINT_VERSION, LOCAL_SEARCH_LIMIT};
pub use enumerate::{count_graphs, enumerate_graphs, ENUMERATION_LIMIT};

use crate::density::InducedMatcher;
use crate::error::{Error, Result};
use crate::exact::{binomial, from_biguint, ser_rational, Rational};
use crate::graph::{Graph, VertexSet};
use crate::stats::par_map;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndMode {
    Exact,
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndResult {
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    pub witness: Graph,
    pub mode: IndMode,
}

pub(crate) fn check_orders(h: &Graph, n: usize) -> Result<()> {
    if h.n() > n {
        return Err(Error::input(format!("target has {} vertices but n = {n}", h.n())));
    }
    Ok(())
}

/// Exact `ind(h, n)`. Among optimal graphs the witness has the smallest
/// canonical code.
pub fn ind_exact(h: &Graph, n: usize) -> Result<IndResult> {
    check_orders(h, n)?;
    let level = enumerate::level(n)?;
    let matcher = InducedMatcher::new(h);
    let counts = par_map(level.graphs.len(), |i| {
        matcher.count_with(level.graphs[i].rows(), VertexSet::EMPTY, VertexSet::EMPTY)
    });
    // graphs are sorted by code, so the first maximum wins ties
    let (best, &count) = counts
        .iter()
        .enumerate()
        .fold((0, &0u64), |acc, (i, c)| if c > acc.1 { (i, c) } else { acc });
    let total = binomial(n as u64, h.n() as u64);
    Ok(IndResult {
        value: from_biguint(&count.into(), &total),
        witness: level.graphs[best].clone(),
        mode: IndMode::Exact,
    })
}
