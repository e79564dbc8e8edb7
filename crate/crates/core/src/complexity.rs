//! The structural complexity index and its numerical cross-checks.
//!
//! For `ẋ = (Γ + A)x + u` the index is the McMillan degree of the filtered
//! transfer function `(sI − Γ)(sI − Γ − A)⁻¹`, which equals the McMillan degree
//! of `Q(s) = A(sI − Γ)⁻¹ = Σᵢ Cᵢ / (s − γᵢ*)`. Here `Cᵢ` keeps the columns of
//! `A` that belong to nodes with pole `γᵢ*`, so the degree is `Σᵢ rank(Cᵢ)`.
//! Generically that sum is `Σᵢ s-rank(Cᵢ) = Σᵢ ν(Gᵢ)`, with `Gᵢ` the subgraph
//! of edges leaving block `i`.
//!
//! Three routes are provided and cross-checked in tests:
//!
//! * [`structural_complexity`]: matching numbers of the outgoing edge-cut.
//! * [`numerical_complexity`]: numerical ranks of the residue matrices for a
//!   given weight realization.
//! * [`mcmillan_oracle`]: minimal state dimension from two state-space
//!   realizations, each with identity input matrix and therefore controllable,
//!   so the observability rank is the McMillan degree.

use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    edge_cut, matching_number, sinks, structural_rank, CutDirection, DirectedGraph,
    NodePartition, SparsityPattern,
};
use crate::numlin::{numerical_rank, observability_stack, DenseMatrix};
use crate::seed::{self, Rng};

/// Interval from which pole representatives are sampled when none are given.
pub const POLE_SAMPLE_RANGE: (f64, f64) = (-1.0, -0.1);
/// Minimum pairwise distance between sampled pole representatives.
pub const POLE_SAMPLE_GAP: f64 = 0.05;

/// Nodal dynamics: the grouping of nodes by equal `γ` and, optionally, the
/// value of `γ` shared by each group.
#[derive(Clone, Debug, PartialEq)]
pub struct DynamicsAssignment {
    partition: NodePartition,
    poles: Option<Vec<f64>>,
}

impl DynamicsAssignment {
    /// Groups nodes by exact equality of `γ` (`-0.0` and `0.0` are the same
    /// value). Blocks are numbered by first appearance.
    pub fn from_gamma(gamma: &[f64]) -> Result<Self> {
        check_finite(gamma)?;
        let partition = NodePartition::from_keys(gamma.iter().map(|&g| canonical_bits(g)));
        let poles = representatives(&partition, gamma);
        Ok(Self {
            partition,
            poles: Some(poles),
        })
    }

    /// Groups nodes whose `γ` values are chained within `eps` of each other
    /// (after sorting). Each block takes the `γ` of its lowest-index node.
    pub fn from_gamma_with_tolerance(gamma: &[f64], eps: f64) -> Result<Self> {
        check_finite(gamma)?;
        if !(eps.is_finite() && eps >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "grouping tolerance must be finite and non-negative, got {eps}"
            )));
        }
        let mut order: Vec<usize> = (0..gamma.len()).collect();
        order.sort_by(|&a, &b| gamma[a].total_cmp(&gamma[b]).then(a.cmp(&b)));
        let mut cluster = vec![0usize; gamma.len()];
        let mut current = 0;
        for w in 1..order.len() {
            if gamma[order[w]] - gamma[order[w - 1]] > eps {
                current += 1;
            }
            cluster[order[w]] = current;
        }
        let partition = NodePartition::from_keys(cluster);
        let poles = representatives(&partition, gamma);
        Ok(Self {
            partition,
            poles: Some(poles),
        })
    }

    /// Grouping only; pole values unknown.
    pub fn from_partition(partition: NodePartition) -> Self {
        Self {
            partition,
            poles: None,
        }
    }

    /// Groups nodes by label, numbering blocks by first appearance.
    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Self {
        Self::from_partition(NodePartition::from_keys(labels.iter().map(|s| s.as_ref())))
    }

    /// Attaches one distinct, finite pole value per block.
    pub fn with_poles(mut self, poles: Vec<f64>) -> Result<Self> {
        if poles.len() != self.partition.k() {
            return Err(Error::DimensionMismatch(format!(
                "{} pole values for {} groups",
                poles.len(),
                self.partition.k()
            )));
        }
        check_finite(&poles)?;
        for i in 0..poles.len() {
            for j in 0..i {
                if poles[i] == poles[j] {
                    return Err(Error::InvalidInput(format!(
                        "groups {j} and {i} share the pole value {}",
                        poles[i]
                    )));
                }
            }
        }
        self.poles = Some(poles);
        Ok(self)
    }

    /// Same grouping with freshly sampled well-separated poles, see
    /// [`sample_poles`].
    pub fn with_sampled_poles(self, rng: &mut Rng) -> Result<Self> {
        let poles = sample_poles(self.partition.k(), rng)?;
        self.with_poles(poles)
    }

    pub fn partition(&self) -> &NodePartition {
        &self.partition
    }

    pub fn k(&self) -> usize {
        self.partition.k()
    }

    pub fn n(&self) -> usize {
        self.partition.n()
    }

    pub fn poles(&self) -> Option<&[f64]> {
        self.poles.as_deref()
    }

    /// `γ` of every node, if pole values are known.
    pub fn node_gammas(&self) -> Option<Vec<f64>> {
        let poles = self.poles.as_ref()?;
        Some(
            self.partition
                .assignment()
                .iter()
                .map(|&b| poles[b])
                .collect(),
        )
    }
}

fn canonical_bits(x: f64) -> u64 {
    if x == 0.0 {
        0.0f64.to_bits()
    } else {
        x.to_bits()
    }
}

fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|x| !x.is_finite()) {
        Some(i) => Err(Error::NonFinite(format!("gamma value at position {i}"))),
        None => Ok(()),
    }
}

fn representatives(partition: &NodePartition, gamma: &[f64]) -> Vec<f64> {
    partition.blocks().iter().map(|b| gamma[b[0]]).collect()
}

/// Draws `k` pole values uniformly from [`POLE_SAMPLE_RANGE`] conditioned on a
/// pairwise distance of at least [`POLE_SAMPLE_GAP`], in random order.
///
/// Sorted uniform draws on the range shrunk by `(k − 1)·gap`, shifted apart by
/// `i·gap`, are uniform over all admissible configurations; this is the same
/// law as rejecting whole draws with a near-collision, without the retries.
pub fn sample_poles(k: usize, rng: &mut Rng) -> Result<Vec<f64>> {
    let (lo, hi) = POLE_SAMPLE_RANGE;
    let slack = (hi - lo) - k.saturating_sub(1) as f64 * POLE_SAMPLE_GAP;
    if slack < 0.0 {
        return Err(Error::InvalidInput(format!(
            "cannot place {k} poles in [{lo}, {hi}] with pairwise gap {POLE_SAMPLE_GAP}; \
             supply gamma values instead"
        )));
    }
    let mut base: Vec<f64> = (0..k).map(|_| lo + slack * rng.random::<f64>()).collect();
    base.sort_by(f64::total_cmp);
    let mut poles: Vec<f64> = base
        .iter()
        .enumerate()
        .map(|(i, x)| (x + i as f64 * POLE_SAMPLE_GAP).min(hi))
        .collect();
    poles.shuffle(rng);
    Ok(poles)
}

/// Interconnection matrix `A` of a weighted graph: `A[dst][src] = weight`.
pub fn adjacency_matrix(g: &DirectedGraph) -> Result<DenseMatrix> {
    let edges = g.weighted_edges().ok_or(Error::MissingWeights)?;
    let mut a = DenseMatrix::zeros(g.n(), g.n());
    for (u, v, w) in edges {
        a.set(v, u, w)?;
    }
    Ok(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueMode {
    /// Only zero/free patterns; works on unweighted graphs.
    Structured,
    /// Patterns and numeric matrices; needs edge weights.
    Numeric,
}

/// One residue term `Cᵢ / (s − γᵢ*)` of `A(sI − Γ)⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct Residue {
    pub pole: Option<f64>,
    pub pattern: SparsityPattern,
    pub matrix: Option<DenseMatrix>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueSet {
    pub n: usize,
    pub residues: Vec<Residue>,
}

impl ResidueSet {
    /// Entrywise sum of the numeric residues; equals `A`.
    pub fn sum(&self) -> Option<DenseMatrix> {
        let mut acc = DenseMatrix::zeros(self.n, self.n);
        for r in &self.residues {
            acc = acc.add(r.matrix.as_ref()?).ok()?;
        }
        Some(acc)
    }
}

/// Residue matrices `Cᵢ`: `[Cᵢ]_{jh} = [A]_{jh}` when node `h` is in block `i`,
/// zero otherwise.
pub fn residues(g: &DirectedGraph, d: &DynamicsAssignment, mode: ResidueMode) -> Result<ResidueSet> {
    check_sizes(g, d)?;
    if mode == ResidueMode::Numeric && !g.is_weighted() {
        return Err(Error::MissingWeights);
    }
    let cut = edge_cut(g, d.partition(), CutDirection::Outgoing)?;
    let residues = cut
        .iter()
        .enumerate()
        .map(|(b, sub)| {
            let matrix = match mode {
                ResidueMode::Structured => None,
                ResidueMode::Numeric => Some(adjacency_matrix(sub)?),
            };
            Ok(Residue {
                pole: d.poles().map(|p| p[b]),
                pattern: SparsityPattern::of_graph(sub),
                matrix,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ResidueSet { n: g.n(), residues })
}

fn check_sizes(g: &DirectedGraph, d: &DynamicsAssignment) -> Result<()> {
    if d.n() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "dynamics cover {} nodes, graph has {}",
            d.n(),
            g.n()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockMatching {
    pub block: usize,
    pub size: usize,
    pub matching_number: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleValues {
    /// Minimal degree of `A(sI − Γ)⁻¹`, realization `(Γ, I, A)`.
    pub residual_map: usize,
    /// Minimal degree of `I + A(sI − Γ − A)⁻¹`, realization `(Γ + A, I, A, I)`.
    pub filtered: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexityReport {
    pub n: usize,
    pub edges: usize,
    pub k: usize,
    pub phi_structural: usize,
    pub phi_over_n: f64,
    pub per_block: Vec<BlockMatching>,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub n_min: usize,
    pub phi_numerical: Option<usize>,
    pub oracle: Option<OracleValues>,
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
}

/// Rounds to the four fractional digits used when reporting `φ/n`.
pub fn normalized_index(phi: usize, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    (phi as f64 / n as f64 * 1e4).round() / 1e4
}

/// `φ_G = Σᵢ ν(Gᵢ)` over the outgoing edge-cut induced by the grouping, with
/// per-block values, bounds and `N_min`. Weights are ignored.
pub fn structural_complexity(g: &DirectedGraph, d: &DynamicsAssignment) -> Result<ComplexityReport> {
    check_sizes(g, d)?;
    let cut = edge_cut(g, d.partition(), CutDirection::Outgoing)?;
    let per_block: Vec<_> = cut
        .iter()
        .zip(d.partition().blocks())
        .enumerate()
        .map(|(block, (sub, members))| BlockMatching {
            block,
            size: members.len(),
            matching_number: matching_number(sub),
        })
        .collect();
    let phi = per_block.iter().map(|b| b.matching_number).sum();
    let (lower_bound, upper_bound) = bounds(g);
    Ok(ComplexityReport {
        n: g.n(),
        edges: g.edge_count(),
        k: d.k(),
        phi_structural: phi,
        phi_over_n: normalized_index(phi, g.n()),
        per_block,
        lower_bound,
        upper_bound,
        n_min: min_inputs(g),
        phi_numerical: None,
        oracle: None,
        seed: None,
        tolerance: None,
    })
}

/// `φ_G` through the residue patterns: `Σᵢ s-rank(Cᵢ)`.
pub fn structural_complexity_by_residues(g: &DirectedGraph, d: &DynamicsAssignment) -> Result<usize> {
    Ok(residues(g, d, ResidueMode::Structured)?
        .residues
        .iter()
        .map(|r| structural_rank(&r.pattern))
        .sum())
}

/// `φ = Σᵢ rank(Cᵢ)` for the weights carried by `g`.
pub fn numerical_complexity(
    g: &DirectedGraph,
    d: &DynamicsAssignment,
    tol: Option<f64>,
) -> Result<usize> {
    residues(g, d, ResidueMode::Numeric)?
        .residues
        .iter()
        .map(|r| numerical_rank(r.matrix.as_ref().expect("numeric residue"), tol))
        .sum()
}

/// Two independent state-space McMillan degrees for the weights of `g` and the
/// pole values of `d`. Both equal the numerical index for this realization.
///
/// Keep `|γ| ≤ 1` so the powers in the observability stacks stay well scaled.
pub fn mcmillan_oracle(
    g: &DirectedGraph,
    d: &DynamicsAssignment,
    tol: Option<f64>,
) -> Result<OracleValues> {
    check_sizes(g, d)?;
    let gamma = d.node_gammas().ok_or_else(|| {
        Error::InvalidInput("oracle needs a pole value for every group".into())
    })?;
    let a = adjacency_matrix(g)?;
    let big_gamma = DenseMatrix::diagonal(&gamma)?;
    let residual_map = numerical_rank(&observability_stack(&a, &big_gamma)?, tol)?;
    let closed_loop = big_gamma.add(&a)?;
    let filtered = numerical_rank(&observability_stack(&a, &closed_loop)?, tol)?;
    Ok(OracleValues {
        residual_map,
        filtered,
    })
}

/// `(ν(G), n − |S(G)|)`, which bracket `φ_G` for every grouping.
pub fn bounds(g: &DirectedGraph) -> (usize, usize) {
    (matching_number(g), g.n() - sinks(g).len())
}

/// Minimum number of inputs for structural controllability under identical
/// nodal dynamics, `max(1, n − ν(G))`. Zero for the empty network.
pub fn min_inputs(g: &DirectedGraph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    1.max(g.n() - matching_number(g))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenericityOutcome {
    pub trials: usize,
    pub matches: usize,
    pub fraction: f64,
    pub phi_structural: usize,
    pub min_phi: usize,
    pub max_phi: usize,
}

/// Samples i.i.d. standard-normal weights on the pattern of `g` and returns the
/// fraction of trials whose numerical index equals `φ_G`.
///
/// Trial `t` draws from its own stream derived from `(seed, t)`, so the result
/// does not depend on how trials are scheduled across threads.
pub fn genericity_check(
    g: &DirectedGraph,
    d: &DynamicsAssignment,
    trials: usize,
    seed: u64,
    tol: Option<f64>,
) -> Result<GenericityOutcome> {
    if trials == 0 {
        return Err(Error::InvalidInput("genericity check needs at least one trial".into()));
    }
    let phi_structural = structural_complexity(g, d)?.phi_structural;
    let observed = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = seed::stream_rng(seed, t as u64);
            let weighted = sample_weights(g, &mut rng)?;
            numerical_complexity(&weighted, d, tol)
        })
        .collect::<Result<Vec<_>>>()?;
    let matches = observed.iter().filter(|&&phi| phi == phi_structural).count();
    Ok(GenericityOutcome {
        trials,
        matches,
        fraction: matches as f64 / trials as f64,
        phi_structural,
        min_phi: observed.iter().copied().min().unwrap_or(0),
        max_phi: observed.iter().copied().max().unwrap_or(0),
    })
}

/// Copy of `g` with i.i.d. standard-normal edge weights.
pub fn sample_weights(g: &DirectedGraph, rng: &mut Rng) -> Result<DirectedGraph> {
    let weights = (0..g.edge_count())
        .map(|_| loop {
            let w: f64 = StandardNormal.sample(rng);
            if w != 0.0 {
                break w;
            }
        })
        .collect();
    g.reweighted(weights)
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AnalysisOptions {
    /// Compute the numerical index for one weight realization.
    pub numerical: bool,
    /// Also run both state-space oracles (implies `numerical`).
    pub oracle: bool,
    pub tolerance: Option<f64>,
    /// Seed for sampled weights and pole values when the inputs lack them.
    pub seed: u64,
}

/// Full report: the structural index always, plus the opt-in numerical index
/// and oracles. Missing weights are drawn standard normal and missing pole
/// values are drawn with [`sample_poles`], from independent streams of `seed`.
pub fn analyze(
    g: &DirectedGraph,
    d: &DynamicsAssignment,
    opts: &AnalysisOptions,
) -> Result<ComplexityReport> {
    let mut report = structural_complexity(g, d)?;
    if !(opts.numerical || opts.oracle) {
        return Ok(report);
    }
    let weighted = match g.is_weighted() {
        true => g.clone(),
        false => sample_weights(g, &mut seed::stream_rng(opts.seed, 0))?,
    };
    report.phi_numerical = Some(numerical_complexity(&weighted, d, opts.tolerance)?);
    if opts.oracle {
        let dynamics = match d.poles() {
            Some(_) => d.clone(),
            None => d.clone().with_sampled_poles(&mut seed::stream_rng(opts.seed, 1))?,
        };
        report.oracle = Some(mcmillan_oracle(&weighted, &dynamics, opts.tolerance)?);
    }
    report.seed = Some(opts.seed);
    report.tolerance = opts.tolerance;
    Ok(report)
}
