//! Random graph models and null models.
//!
//! Barabási–Albert and Watts–Strogatz are undirected models; both are emitted
//! as bidirected digraphs, each undirected edge `{u, v}` becoming `(u, v)` and
//! `(v, u)`.

use std::collections::BTreeSet;

use rand::seq::index;
use rand::Rng as _;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodePartition};
use crate::seed::{self, Rng};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Model {
    /// Preferential attachment with `m` edges per new node.
    BarabasiAlbert { m: usize },
    /// Ring lattice of even degree `ring_degree`, each edge rewired with
    /// probability `p`.
    WattsStrogatz { ring_degree: usize, p: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub model: Model,
    pub n: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Self {
        Self {
            model: Model::BarabasiAlbert { m },
            n,
            seed,
        }
    }

    pub fn watts_strogatz(n: usize, ring_degree: usize, p: f64, seed: u64) -> Self {
        Self {
            model: Model::WattsStrogatz { ring_degree, p },
            n,
            seed,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        match self.model {
            Model::BarabasiAlbert { m } => {
                if m < 1 || m >= self.n {
                    return Err(Error::InvalidSpec(format!(
                        "Barabási–Albert needs 1 <= m < n, got m = {m}, n = {}",
                        self.n
                    )));
                }
            }
            Model::WattsStrogatz { ring_degree, p } => {
                if ring_degree % 2 != 0 || ring_degree < 2 || ring_degree >= self.n {
                    return Err(Error::InvalidSpec(format!(
                        "Watts–Strogatz needs an even ring degree in [2, n), got {ring_degree} for n = {}",
                        self.n
                    )));
                }
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidSpec(format!(
                        "rewiring probability must lie in [0, 1], got {p}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Builds the graph described by `spec`. The same parameters and seed give the same edge list.
pub fn generate(spec: &GeneratorSpec) -> Result<DirectedGraph> {
    spec.validate()?;
    let mut rng = seed::rng_from_seed(spec.seed);
    let undirected = match spec.model {
        Model::BarabasiAlbert { m } => barabasi_albert(spec.n, m, &mut rng),
        Model::WattsStrogatz { ring_degree, p } => watts_strogatz(spec.n, ring_degree, p, &mut rng),
    };
    bidirected(spec.n, &undirected)
}

fn bidirected(n: usize, undirected: &[(usize, usize)]) -> Result<DirectedGraph> {
    DirectedGraph::new(
        n,
        undirected.iter().flat_map(|&(u, v)| [(u, v), (v, u)]),
    )
}

/// Seed clique on nodes `0..m`; node `t ≥ m` links to `m` distinct earlier
/// nodes drawn with probability proportional to degree. Targets are drawn
/// uniformly while every existing node still has degree zero (only when
/// `m = 1`).
fn barabasi_albert(n: usize, m: usize, rng: &mut Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(m * (m - 1) / 2 + (n - m) * m);
    // Each node appears once per incident edge end.
    let mut ends: Vec<usize> = Vec::new();
    for u in 0..m {
        for v in (u + 1)..m {
            edges.push((u, v));
            ends.extend([u, v]);
        }
    }
    for t in m..n {
        let mut targets = BTreeSet::new();
        while targets.len() < m {
            let v = if ends.is_empty() {
                rng.random_range(0..t)
            } else {
                ends[rng.random_range(0..ends.len())]
            };
            targets.insert(v);
        }
        for v in targets {
            edges.push((v, t));
            ends.extend([v, t]);
        }
    }
    edges
}

/// Each node joined to its `ring_degree / 2` successors on the ring; then, for
/// each offset `j` and each node `u`, the edge `(u, u + j)` is moved to
/// `(u, w)` with probability `p`, `w` uniform among nodes that are neither `u`
/// nor already adjacent to `u`.
fn watts_strogatz(n: usize, ring_degree: usize, p: f64, rng: &mut Rng) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n * ring_degree / 2);
    for j in 1..=ring_degree / 2 {
        for u in 0..n {
            edges.push((u, (u + j) % n));
        }
    }
    if p == 0.0 {
        return edges;
    }
    let mut neighbours: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(u, v) in &edges {
        neighbours[u].insert(v);
        neighbours[v].insert(u);
    }
    for slot in edges.iter_mut() {
        if rng.random::<f64>() >= p {
            continue;
        }
        let (u, v) = *slot;
        if neighbours[u].len() >= n - 1 {
            continue;
        }
        let w = loop {
            let w = rng.random_range(0..n);
            if w != u && !neighbours[u].contains(&w) {
                break w;
            }
        };
        neighbours[u].remove(&v);
        neighbours[v].remove(&u);
        neighbours[u].insert(w);
        neighbours[w].insert(u);
        *slot = (u, w);
    }
    edges
}

/// Places `|E|` directed edges uniformly at random among the `n(n − 1)` ordered
/// pairs of distinct nodes, without repetition. Labels are kept; weights are
/// dropped.
pub fn rewire_uniform(g: &DirectedGraph, seed: u64) -> Result<DirectedGraph> {
    let n = g.n();
    let slots = n * n.saturating_sub(1);
    let count = g.edge_count();
    if count > slots {
        return Err(Error::InvalidInput(format!(
            "cannot place {count} edges without self-loops or duplicates on {n} nodes"
        )));
    }
    let mut rng = seed::rng_from_seed(seed);
    let mut picks = index::sample(&mut rng, slots, count).into_vec();
    picks.sort_unstable();
    let edges = picks.into_iter().map(|s| {
        let u = s / (n - 1);
        let r = s % (n - 1);
        (u, if r >= u { r + 1 } else { r })
    });
    let out = DirectedGraph::new(n, edges)?;
    match g.labels() {
        Some(l) => out.with_labels(l.to_vec()),
        None => Ok(out),
    }
}

/// Uniformly random assignment of `n` nodes to `k` blocks, conditioned on every
/// block being non-empty.
///
/// This is the distribution of "assign each node uniformly, resample until no
/// block is empty", drawn directly: node by node, the probability of landing in
/// a still-empty block is weighted by the chance that the remaining nodes can
/// still cover all other empty blocks.
pub fn random_partition(n: usize, k: usize, seed: u64) -> Result<NodePartition> {
    if k == 0 && n > 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if k > n {
        return Err(Error::InvalidInput(format!("k = {k} exceeds n = {n}")));
    }
    let mut rng = seed::rng_from_seed(seed);
    let cover = CoverTable::new(n, k);
    let mut empty: Vec<usize> = (0..k).collect();
    let mut used: Vec<usize> = Vec::with_capacity(k);
    let mut block_of = Vec::with_capacity(n);
    for v in 0..n {
        let remaining = n - v;
        let u = empty.len();
        let to_empty = if u == 0 {
            false
        } else if u == remaining {
            true
        } else {
            let p = (u as f64 / k as f64).ln() + cover.ln(remaining - 1, u - 1)
                - cover.ln(remaining, u);
            rng.random::<f64>() < p.exp()
        };
        let b = if to_empty {
            let b = empty.swap_remove(rng.random_range(0..u));
            used.push(b);
            b
        } else {
            used[rng.random_range(0..used.len())]
        };
        block_of.push(b);
    }
    NodePartition::new(k, block_of)
}

/// `ln h(r, u)`, where `h(r, u)` is the probability that `r` uniform draws from
/// `k` blocks hit all of `u` given blocks.
struct CoverTable {
    k: usize,
    width: usize,
    ln_h: Vec<f64>,
}

impl CoverTable {
    fn new(n: usize, k: usize) -> Self {
        let width = k + 1;
        let mut ln_h = vec![f64::NEG_INFINITY; (n + 1) * width];
        ln_h[0] = 0.0;
        let kf = k as f64;
        for r in 1..=n {
            for u in 0..=k.min(r) {
                let stay = if u < k {
                    ((kf - u as f64) / kf).ln() + ln_h[(r - 1) * width + u]
                } else {
                    f64::NEG_INFINITY
                };
                let hit = if u > 0 {
                    (u as f64 / kf).ln() + ln_h[(r - 1) * width + u - 1]
                } else {
                    f64::NEG_INFINITY
                };
                ln_h[r * width + u] = ln_add_exp(stay, hit);
            }
        }
        Self { k, width, ln_h }
    }

    fn ln(&self, r: usize, u: usize) -> f64 {
        debug_assert!(u <= self.k);
        self.ln_h[r * self.width + u]
    }
}

fn ln_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}
