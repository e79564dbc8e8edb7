//! Directed graphs and the combinatorial primitives behind the structural
//! complexity index: degrees, sinks and sources, edge-cuts, maximum matching
//! and structural rank.

mod matching;

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};

pub use matching::{hopcroft_karp, BipartiteMatching};

/// Directed graph on nodes `0..n` with an optional real weight per edge.
///
/// Edge `(src, dst)` carries the weight `a_{dst,src}`, i.e. the entry of the
/// interconnection matrix in row `dst` and column `src`. An unweighted graph
/// stands for the structured matrix whose edge entries are free parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    weights: Option<Vec<f64>>,
    labels: Option<Vec<String>>,
}

impl DirectedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges: Vec<_> = edges.into_iter().collect();
        check_edges(n, &edges)?;
        Ok(Self {
            n,
            edges,
            weights: None,
            labels: None,
        })
    }

    /// Weighted graph. Every weight must be finite and nonzero.
    pub fn with_weights(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let (edges, weights): (Vec<_>, Vec<_>) =
            edges.into_iter().map(|(u, v, w)| ((u, v), w)).unzip();
        check_edges(n, &edges)?;
        check_weights(&edges, &weights)?;
        Ok(Self {
            n,
            edges,
            weights: Some(weights),
            labels: None,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            weights: None,
            labels: None,
        }
    }

    /// Attaches external node identifiers; `labels[i]` names node `i`.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} nodes",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Same pattern with a new weight per edge (in edge order).
    pub fn reweighted(&self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.edges.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} edges",
                weights.len(),
                self.edges.len()
            )));
        }
        check_weights(&self.edges, &weights)?;
        Ok(Self {
            weights: Some(weights),
            ..self.clone()
        })
    }

    /// Drops the weights, keeping the pattern and labels.
    pub fn pattern(&self) -> Self {
        Self {
            weights: None,
            ..self.clone()
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// External name of node `v`, or its index when no labels are attached.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Weighted edges `(src, dst, weight)` if the graph is weighted.
    pub fn weighted_edges(&self) -> Option<impl Iterator<Item = (usize, usize, f64)> + '_> {
        self.weights.as_ref().map(|w| {
            self.edges
                .iter()
                .zip(w.iter())
                .map(|(&(u, v), &w)| (u, v, w))
        })
    }

    /// Out-neighbour lists, each sorted ascending.
    pub fn out_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
        }
        adj.iter_mut().for_each(|a| a.sort_unstable());
        adj
    }

    /// Edge subset selected by `keep`, carrying weights and labels over.
    fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Self {
        let mut edges = Vec::new();
        let mut weights = self.weights.as_ref().map(|_| Vec::new());
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if keep(u, v) {
                edges.push((u, v));
                if let (Some(out), Some(w)) = (weights.as_mut(), self.weights.as_ref()) {
                    out.push(w[i]);
                }
            }
        }
        Self {
            n: self.n,
            edges,
            weights,
            labels: self.labels.clone(),
        }
    }
}

fn check_edges(n: usize, edges: &[(usize, usize)]) -> Result<()> {
    let mut seen = HashSet::with_capacity(edges.len());
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::InvalidInput(format!(
                "edge ({u}, {v}) out of range for {n} nodes"
            )));
        }
        if !seen.insert((u, v)) {
            return Err(Error::DuplicateEdge {
                src: u.to_string(),
                dst: v.to_string(),
            });
        }
    }
    Ok(())
}

fn check_weights(edges: &[(usize, usize)], weights: &[f64]) -> Result<()> {
    for (&(u, v), &w) in edges.iter().zip(weights) {
        if !w.is_finite() {
            return Err(Error::NonFinite(format!("weight of edge ({u}, {v})")));
        }
        if w == 0.0 {
            return Err(Error::InvalidInput(format!("edge ({u}, {v}) has zero weight")));
        }
    }
    Ok(())
}

/// Assignment of every node to one of `k` non-empty blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodePartition {
    k: usize,
    block_of: Vec<usize>,
}

impl NodePartition {
    /// Validates that block indices lie in `0..k` and every block is used.
    pub fn new(k: usize, block_of: Vec<usize>) -> Result<Self> {
        let mut used = vec![false; k];
        for (v, &b) in block_of.iter().enumerate() {
            if b >= k {
                return Err(Error::InvalidInput(format!(
                    "node {v} assigned to block {b}, but k = {k}"
                )));
            }
            used[b] = true;
        }
        if let Some(b) = used.iter().position(|u| !u) {
            return Err(Error::InvalidInput(format!("block {b} of {k} is empty")));
        }
        Ok(Self { k, block_of })
    }

    /// Partition from arbitrary block keys, numbering blocks by first
    /// appearance in node order.
    pub fn from_keys<K: Eq + std::hash::Hash>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut ids = std::collections::HashMap::new();
        let block_of = keys
            .into_iter()
            .map(|key| {
                let next = ids.len();
                *ids.entry(key).or_insert(next)
            })
            .collect();
        Self {
            k: ids.len(),
            block_of,
        }
    }

    pub fn single(n: usize) -> Self {
        Self {
            k: usize::from(n > 0),
            block_of: vec![0; n],
        }
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            k: n,
            block_of: (0..n).collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.block_of
    }

    /// Members of each block, ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.k];
        for (v, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(v);
        }
        blocks
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &NodePartition) -> bool {
        if self.n() != coarser.n() {
            return false;
        }
        let mut parent = vec![None; self.k];
        self.block_of
            .iter()
            .zip(&coarser.block_of)
            .all(|(&b, &c)| *parent[b].get_or_insert(c) == c)
    }
}

/// Zero/free pattern of a `rows × cols` structured matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsityPattern {
    rows: usize,
    cols: usize,
    nonzeros: Vec<(usize, usize)>,
}

impl SparsityPattern {
    pub fn new(
        rows: usize,
        cols: usize,
        nonzeros: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let nonzeros: Vec<_> = nonzeros.into_iter().collect();
        let mut seen = HashSet::with_capacity(nonzeros.len());
        for &(r, c) in &nonzeros {
            if r >= rows || c >= cols {
                return Err(Error::InvalidInput(format!(
                    "position ({r}, {c}) outside {rows}x{cols} pattern"
                )));
            }
            if !seen.insert((r, c)) {
                return Err(Error::InvalidInput(format!("duplicate position ({r}, {c})")));
            }
        }
        Ok(Self {
            rows,
            cols,
            nonzeros,
        })
    }

    /// Pattern of the interconnection matrix: edge `(src, dst)` is entry
    /// `(dst, src)`.
    pub fn of_graph(g: &DirectedGraph) -> Self {
        Self {
            rows: g.n,
            cols: g.n,
            nonzeros: g.edges.iter().map(|&(u, v)| (v, u)).collect(),
        }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            nonzeros: (0..rows)
                .flat_map(|r| (0..cols).map(move |c| (r, c)))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nonzeros(&self) -> &[(usize, usize)] {
        &self.nonzeros
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            nonzeros: self.nonzeros.iter().map(|&(r, c)| (c, r)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degrees {
    pub in_degree: Vec<usize>,
    pub out_degree: Vec<usize>,
}

/// In- and out-degree of every node. A self-loop counts once in each.
pub fn degrees(g: &DirectedGraph) -> Degrees {
    let mut in_degree = vec![0; g.n];
    let mut out_degree = vec![0; g.n];
    for &(u, v) in &g.edges {
        out_degree[u] += 1;
        in_degree[v] += 1;
    }
    Degrees {
        in_degree,
        out_degree,
    }
}

/// Nodes with out-degree zero, ascending. Isolated nodes are included.
pub fn sinks(g: &DirectedGraph) -> Vec<usize> {
    let d = degrees(g);
    (0..g.n).filter(|&v| d.out_degree[v] == 0).collect()
}

/// Nodes with in-degree zero, ascending.
pub fn sources(g: &DirectedGraph) -> Vec<usize> {
    let d = degrees(g);
    (0..g.n).filter(|&v| d.in_degree[v] == 0).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutDirection {
    /// Subgraph `i` holds the edges leaving block `i`.
    Outgoing,
    /// Subgraph `i` holds the edges entering block `i`.
    Ingoing,
}

/// Edge-cut of `g` induced by `p`: one subgraph per block, all on the full node
/// set, whose edge sets partition the edges of `g`.
pub fn edge_cut(
    g: &DirectedGraph,
    p: &NodePartition,
    direction: CutDirection,
) -> Result<Vec<DirectedGraph>> {
    if p.n() != g.n {
        return Err(Error::DimensionMismatch(format!(
            "partition covers {} nodes, graph has {}",
            p.n(),
            g.n
        )));
    }
    let owner = |u: usize, v: usize| match direction {
        CutDirection::Outgoing => p.block_of(u),
        CutDirection::Ingoing => p.block_of(v),
    };
    Ok((0..p.k())
        .map(|b| g.filter_edges(|u, v| owner(u, v) == b))
        .collect())
}

/// A maximum matching of `g`: edges with pairwise distinct start nodes and
/// pairwise distinct end nodes, as `(src, dst)` pairs in ascending `src` order.
pub fn maximum_matching(g: &DirectedGraph) -> Vec<(usize, usize)> {
    hopcroft_karp(g.n, &g.out_adjacency()).pairs().collect()
}

/// Size of a maximum matching of `g`.
///
/// Computed on the bipartite graph of out-copies versus in-copies of the nodes
/// with one edge per directed edge; a self-loop `(v, v)` joins the out-copy of
/// `v` to its in-copy.
pub fn matching_number(g: &DirectedGraph) -> usize {
    hopcroft_karp(g.n, &g.out_adjacency()).size
}

/// Largest rank over all numerical realizations of the pattern, i.e. the size
/// of a maximum rows-versus-columns matching on its nonzero positions.
pub fn structural_rank(p: &SparsityPattern) -> usize {
    let mut adj = vec![Vec::new(); p.rows];
    for &(r, c) in &p.nonzeros {
        adj[r].push(c);
    }
    adj.iter_mut().for_each(|a| a.sort_unstable());
    hopcroft_karp(p.cols, &adj).size
}
