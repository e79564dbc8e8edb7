//! Monte Carlo harness: random graphs (or uniform rewirings of a given graph)
//! with random groupings, one result row per trial and group count.

use rayon::prelude::*;
use serde::Serialize;

use crate::complexity::{normalized_index, structural_complexity, DynamicsAssignment};
use crate::error::{Error, Result};
use crate::generators::{generate, random_partition, rewire_uniform, GeneratorSpec};
use crate::graph::DirectedGraph;
use crate::seed::derive_seed;

/// Header of the per-trial results table.
pub const RECORDS_HEADER: &str = "trial,k,phi_structural,lower,upper,phi_over_n,seed";
/// Header of the per-k summary table.
pub const SUMMARY_HEADER: &str = "k,trials,min,q1,median,q3,max,mean";

#[derive(Clone, Debug, PartialEq)]
pub enum GraphSource {
    /// A fresh graph per trial; the generator's own seed is replaced by a derived one.
    Generator(GeneratorSpec),
    /// A fresh uniform rewiring of this graph per trial.
    Rewire(DirectedGraph),
}

impl GraphSource {
    pub fn n(&self) -> usize {
        match self {
            GraphSource::Generator(spec) => spec.n,
            GraphSource::Rewire(g) => g.n(),
        }
    }

    fn sample(&self, seed: u64) -> Result<DirectedGraph> {
        match self {
            GraphSource::Generator(spec) => generate(&spec.with_seed(seed)),
            GraphSource::Rewire(g) => rewire_uniform(g, seed),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub source: GraphSource,
    pub k_values: Vec<usize>,
    pub trials: usize,
    pub master_seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidInput("trials must be at least 1".into()));
        }
        if self.k_values.is_empty() {
            return Err(Error::InvalidInput("k_values must not be empty".into()));
        }
        let n = self.source.n();
        if let Some(&k) = self.k_values.iter().find(|&&k| k == 0 || k > n) {
            return Err(Error::InvalidInput(format!("k = {k} outside [1, {n}]")));
        }
        if let GraphSource::Generator(spec) = &self.source {
            spec.validate()?;
        }
        Ok(())
    }
}

/// One trial at one group count.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRecord {
    pub trial: usize,
    pub k: usize,
    pub phi_structural: usize,
    pub lower: usize,
    pub upper: usize,
    pub phi_over_n: f64,
    /// Trial seed; the graph uses stream 0 of it and the grouping for `k`
    /// uses stream `k + 1`.
    pub seed: u64,
    #[serde(skip)]
    pub per_block: Vec<usize>,
}

/// Box-plot statistics of `φ_G` over the trials at one `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KSummary {
    pub k: usize,
    pub trials: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentResults {
    /// Ordered by position in `k_values`, then by trial.
    pub records: Vec<ResultRecord>,
    pub summary: Vec<KSummary>,
}

pub fn trial_seed(master: u64, trial: usize) -> u64 {
    derive_seed(master, trial as u64)
}

/// Runs every `(k, trial)` pair. Each trial draws one graph shared by all `k`,
/// so trials are paired across group counts. Deterministic in `master_seed`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResults> {
    cfg.validate()?;
    let n = cfg.source.n();
    let per_trial: Vec<Vec<ResultRecord>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = trial_seed(cfg.master_seed, trial);
            let g = cfg.source.sample(derive_seed(seed, 0))?;
            cfg.k_values
                .iter()
                .map(|&k| {
                    let p = random_partition(n, k, derive_seed(seed, k as u64 + 1))?;
                    let report = structural_complexity(&g, &DynamicsAssignment::from_partition(p))?;
                    Ok(ResultRecord {
                        trial,
                        k,
                        phi_structural: report.phi_structural,
                        lower: report.lower_bound,
                        upper: report.upper_bound,
                        phi_over_n: report.phi_over_n,
                        seed,
                        per_block: report.per_block.iter().map(|b| b.matching_number).collect(),
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut records = Vec::with_capacity(cfg.trials * cfg.k_values.len());
    let mut summary = Vec::with_capacity(cfg.k_values.len());
    for ki in 0..cfg.k_values.len() {
        let rows: Vec<_> = per_trial.iter().map(|t| t[ki].clone()).collect();
        let values: Vec<f64> = rows.iter().map(|r| r.phi_structural as f64).collect();
        summary.push(summarize(cfg.k_values[ki], &values));
        records.extend(rows);
    }
    Ok(ExperimentResults { records, summary })
}

fn summarize(k: usize, values: &[f64]) -> KSummary {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    KSummary {
        k,
        trials: values.len(),
        min: sorted[0],
        q1: quantile(&sorted, 0.25),
        median: quantile(&sorted, 0.5),
        q3: quantile(&sorted, 0.75),
        max: sorted[sorted.len() - 1],
        mean: values.iter().sum::<f64>() / values.len() as f64,
    }
}

/// Linear interpolation between closest ranks of sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn to_csv<T>(header: &str, rows: &[T], row: impl Fn(&T) -> Vec<String>) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header.split(',')).expect("in-memory write");
    for r in rows {
        w.write_record(row(r)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

impl ExperimentResults {
    pub fn records_csv(&self) -> String {
        to_csv(RECORDS_HEADER, &self.records, |r| {
            vec![
                r.trial.to_string(),
                r.k.to_string(),
                r.phi_structural.to_string(),
                r.lower.to_string(),
                r.upper.to_string(),
                format!("{:.4}", r.phi_over_n),
                r.seed.to_string(),
            ]
        })
    }

    pub fn summary_csv(&self) -> String {
        to_csv(SUMMARY_HEADER, &self.summary, |s| {
            vec![
                s.k.to_string(),
                s.trials.to_string(),
                s.min.to_string(),
                s.q1.to_string(),
                s.median.to_string(),
                s.q3.to_string(),
                s.max.to_string(),
                format!("{:.4}", s.mean),
            ]
        })
    }
}

/// Normalized index of a network versus the mean over uniform rewirings that
/// keep the node count, edge count and grouping.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table1Summary {
    pub n: usize,
    pub edges: usize,
    pub k: usize,
    pub phi_true: usize,
    pub phi_over_n_true: f64,
    pub rewire_trials: usize,
    pub phi_over_n_rand_mean: f64,
    pub phi_over_n_rand_min: f64,
    pub phi_over_n_rand_max: f64,
    pub seed: u64,
}

pub fn run_table1(
    g: &DirectedGraph,
    d: &DynamicsAssignment,
    rewire_trials: usize,
    seed: u64,
) -> Result<Table1Summary> {
    if rewire_trials == 0 {
        return Err(Error::InvalidInput("rewire_trials must be at least 1".into()));
    }
    let n = g.n();
    let truth = structural_complexity(g, d)?;
    let rand_phi: Vec<usize> = (0..rewire_trials)
        .into_par_iter()
        .map(|t| {
            let r = rewire_uniform(g, trial_seed(seed, t))?;
            Ok(structural_complexity(&r, d)?.phi_structural)
        })
        .collect::<Result<_>>()?;
    let ratio = |phi: usize| if n == 0 { 0.0 } else { phi as f64 / n as f64 };
    let mean = rand_phi.iter().map(|&p| ratio(p)).sum::<f64>() / rewire_trials as f64;
    let round4 = |x: f64| (x * 1e4).round() / 1e4;
    Ok(Table1Summary {
        n,
        edges: g.edge_count(),
        k: d.k(),
        phi_true: truth.phi_structural,
        phi_over_n_true: normalized_index(truth.phi_structural, n),
        rewire_trials,
        phi_over_n_rand_mean: round4(mean),
        phi_over_n_rand_min: round4(ratio(*rand_phi.iter().min().unwrap())),
        phi_over_n_rand_max: round4(ratio(*rand_phi.iter().max().unwrap())),
        seed,
    })
}
