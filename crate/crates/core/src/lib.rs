//! Structural complexity of directed networks of first-order linear nodes.
//!
//! A network of scalar nodes `ẋᵢ = γᵢ xᵢ + Σ a_ij x_j + uᵢ` is summarised by the
//! McMillan degree of its locally filtered transfer function. Generically this
//! degree depends only on the interconnection pattern and on how nodes are
//! grouped by equal `γ`, and it equals the sum of the matching numbers of the
//! outgoing edge-cut subgraphs induced by that grouping.
//!
//! The crate is organised as:
//!
//! * [`graph`]: directed graphs, partitions, edge-cuts, maximum matching and
//!   structural rank.
//! * [`numlin`]: dense matrices, SVD-based numerical rank and observability
//!   stacks.
//! * [`complexity`]: the structural index, its numerical counterpart, two
//!   state-space McMillan-degree oracles, bounds and the genericity check.
//! * [`generators`]: Barabási–Albert, Watts–Strogatz, uniform rewiring and
//!   random group assignment.
//! * [`io`] and [`experiment`]: file formats and the Monte Carlo harness.

pub mod commands;
pub mod complexity;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod io;
pub mod numlin;
pub mod seed;

pub use complexity::{
    bounds, genericity_check, mcmillan_oracle, min_inputs, numerical_complexity, residues,
    structural_complexity, ComplexityReport, DynamicsAssignment, GenericityOutcome, ResidueMode,
    ResidueSet,
};
pub use error::{Error, Result};
pub use generators::{generate, random_partition, rewire_uniform, GeneratorSpec, Model};
pub use graph::{
    degrees, edge_cut, matching_number, maximum_matching, sinks, sources, structural_rank,
    CutDirection, Degrees, DirectedGraph, NodePartition, SparsityPattern,
};
pub use numlin::{numerical_rank, observability_stack, DenseMatrix};
