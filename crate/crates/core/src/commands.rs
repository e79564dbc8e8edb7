//! Payloads of the command-line operations, kept here so they can be produced
//! and checked without spawning a process.

use serde::Serialize;

use crate::complexity::{analyze, bounds, genericity_check, min_inputs, AnalysisOptions, ComplexityReport, GenericityOutcome};
use crate::error::Result;
use crate::graph::{sinks, DirectedGraph};
use crate::io::Groups;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metadata {
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComputeOutput {
    #[serde(flatten)]
    pub report: ComplexityReport,
    pub group_names: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genericity: Option<GenericityOutcome>,
    /// Run-dependent values; left out unless explicitly requested so that
    /// repeated runs produce identical documents.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// Structural index of `g` under `groups`, with the optional numerical index,
/// oracles and genericity estimate.
pub fn run_compute(
    g: &DirectedGraph,
    groups: &Groups,
    opts: &AnalysisOptions,
    genericity_trials: Option<usize>,
) -> Result<ComputeOutput> {
    let report = analyze(g, &groups.dynamics, opts)?;
    let genericity = genericity_trials
        .map(|t| genericity_check(g, &groups.dynamics, t, opts.seed, opts.tolerance))
        .transpose()?;
    Ok(ComputeOutput {
        report,
        group_names: groups.names.clone(),
        genericity,
        metadata: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsOutput {
    pub n: usize,
    pub edges: usize,
    pub lower: usize,
    pub upper: usize,
    pub sinks: usize,
    pub n_min: usize,
}

pub fn run_bounds(g: &DirectedGraph) -> BoundsOutput {
    let (lower, upper) = bounds(g);
    BoundsOutput {
        n: g.n(),
        edges: g.edge_count(),
        lower,
        upper,
        sinks: sinks(g).len(),
        n_min: min_inputs(g),
    }
}

/// Pretty JSON followed by a newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable payload");
    s.push('\n');
    s
}
