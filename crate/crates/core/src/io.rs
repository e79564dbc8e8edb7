//! Edge-list and group file formats.
//!
//! Edge lists hold one edge per line as `src,dst` or `src,dst,weight`, comma
//! or tab separated. Lines starting with `#` and blank lines are skipped.
//! Node identifiers are arbitrary strings, indexed by first appearance. A line
//! with a single identifier declares a node without adding an edge.
//!
//! An optional first line `n=<count>` fixes the node count; identifiers must
//! then be integers in `0..count`, so isolated nodes need no declaration.
//!
//! Group files hold one `node_id,group` line per node, where `group` is either
//! a label or a `γ` value. A file must use one kind throughout.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::complexity::DynamicsAssignment;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodePartition};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EdgeListOptions {
    /// Reject files without an `n=<count>` header instead of inferring the
    /// node set from the identifiers seen.
    pub require_header: bool,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_edge_list(path: &Path, opts: EdgeListOptions) -> Result<DirectedGraph> {
    parse_edge_list_str(&read(path)?, path, opts)
}

/// Records lines with their 1-based numbers, dropping comments and blanks.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn fields(line: &str) -> Vec<&str> {
    let sep = if line.contains('\t') { '\t' } else { ',' };
    line.split(sep).map(str::trim).collect()
}

/// Parses edge-list text; `origin` is only used in error messages.
pub fn parse_edge_list_str(text: &str, origin: &Path, opts: EdgeListOptions) -> Result<DirectedGraph> {
    let err = |line: usize, message: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let mut lines = content_lines(text).peekable();

    let declared_n = match lines.peek() {
        Some(&(no, l)) if l.starts_with("n=") => {
            lines.next();
            let n = l[2..]
                .trim()
                .parse::<usize>()
                .map_err(|_| err(no, format!("bad node-count header `{l}`")))?;
            Some(n)
        }
        _ if opts.require_header => {
            return Err(err(1, "missing `n=<count>` header".into()));
        }
        _ => None,
    };

    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut node = |id: &str, no: usize| -> Result<usize> {
        if id.is_empty() {
            return Err(err(no, "empty node identifier".into()));
        }
        match declared_n {
            Some(n) => match id.parse::<usize>() {
                Ok(v) if v < n => Ok(v),
                _ => Err(err(no, format!("node `{id}` is not an integer in 0..{n}"))),
            },
            None => Ok(*ids.entry(id.to_string()).or_insert_with(|| {
                labels.push(id.to_string());
                labels.len() - 1
            })),
        }
    };

    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    let mut weighted: Option<bool> = None;
    let mut seen: HashSet<(usize, usize)> = HashSet::new();

    for (no, line) in lines {
        let f = fields(line);
        match f.len() {
            1 => {
                node(f[0], no)?;
            }
            2 | 3 => {
                let has_weight = f.len() == 3;
                match weighted {
                    None => weighted = Some(has_weight),
                    Some(w) if w != has_weight => {
                        return Err(err(no, "edges must be either all weighted or all unweighted".into()));
                    }
                    _ => {}
                }
                let u = node(f[0], no)?;
                let v = node(f[1], no)?;
                if !seen.insert((u, v)) {
                    return Err(Error::DuplicateEdge {
                        src: f[0].to_string(),
                        dst: f[1].to_string(),
                    });
                }
                if has_weight {
                    let w: f64 = f[2]
                        .parse()
                        .map_err(|_| err(no, format!("bad weight `{}`", f[2])))?;
                    if !w.is_finite() || w == 0.0 {
                        return Err(err(no, format!("weight must be finite and nonzero, got `{}`", f[2])));
                    }
                    weights.push(w);
                }
                edges.push((u, v));
            }
            k => return Err(err(no, format!("expected 1 to 3 fields, found {k}"))),
        }
    }

    let n = declared_n.unwrap_or(labels.len());
    let graph = if weighted == Some(true) {
        DirectedGraph::with_weights(n, edges.into_iter().zip(weights).map(|((u, v), w)| (u, v, w)))?
    } else {
        DirectedGraph::new(n, edges)?
    };
    match declared_n {
        Some(_) => Ok(graph),
        None => graph.with_labels(labels),
    }
}

/// Serializes `g` in the edge-list format. Unlabeled graphs get an `n=` header;
/// labeled graphs declare every node first so indices survive a round trip.
pub fn write_edge_list(g: &DirectedGraph) -> String {
    let mut out = String::new();
    match g.labels() {
        None => writeln!(out, "n={}", g.n()).unwrap(),
        Some(labels) => {
            for l in labels {
                writeln!(out, "{l}").unwrap();
            }
        }
    }
    let name = |v: usize| g.label(v);
    match g.weighted_edges() {
        Some(edges) => {
            for (u, v, w) in edges {
                writeln!(out, "{},{},{w}", name(u), name(v)).unwrap();
            }
        }
        None => {
            for &(u, v) in g.edges() {
                writeln!(out, "{},{}", name(u), name(v)).unwrap();
            }
        }
    }
    out
}

/// Group file contents, resolved against a graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Groups {
    pub dynamics: DynamicsAssignment,
    /// Display name of each block (its label or `γ` value).
    pub names: Vec<String>,
}

impl Groups {
    /// Every node in one group.
    pub fn single(n: usize) -> Self {
        Self {
            dynamics: DynamicsAssignment::from_partition(NodePartition::single(n)),
            names: if n > 0 { vec!["all".into()] } else { Vec::new() },
        }
    }

    /// Every node in its own group.
    pub fn distinct(g: &DirectedGraph) -> Self {
        Self {
            dynamics: DynamicsAssignment::from_partition(NodePartition::singletons(g.n())),
            names: (0..g.n()).map(|v| g.label(v)).collect(),
        }
    }
}

pub fn parse_groups(path: &Path, g: &DirectedGraph, gamma_tol: Option<f64>) -> Result<Groups> {
    parse_groups_str(&read(path)?, path, g, gamma_tol)
}

pub fn parse_groups_str(
    text: &str,
    origin: &Path,
    g: &DirectedGraph,
    gamma_tol: Option<f64>,
) -> Result<Groups> {
    let err = |line: usize, message: String| Error::Parse {
        path: PathBuf::from(origin),
        line,
        message,
    };
    let index: HashMap<String, usize> = (0..g.n()).map(|v| (g.label(v), v)).collect();
    let mut value: Vec<Option<String>> = vec![None; g.n()];
    let mut numeric: Option<bool> = None;

    for (no, line) in content_lines(text) {
        let f = fields(line);
        if f.len() != 2 {
            return Err(err(no, format!("expected `node,group`, found {} fields", f.len())));
        }
        let v = *index
            .get(f[0])
            .ok_or_else(|| err(no, format!("unknown node `{}`", f[0])))?;
        if value[v].is_some() {
            return Err(err(no, format!("node `{}` listed twice", f[0])));
        }
        let is_num = f[1].parse::<f64>().is_ok_and(f64::is_finite);
        match numeric {
            None => numeric = Some(is_num),
            Some(n) if n != is_num => {
                return Err(err(no, "file mixes group labels and gamma values".into()));
            }
            _ => {}
        }
        value[v] = Some(f[1].to_string());
    }

    if let Some(v) = value.iter().position(Option::is_none) {
        return Err(Error::InvalidInput(format!(
            "{}: node `{}` has no group",
            origin.display(),
            g.label(v)
        )));
    }
    let value: Vec<String> = value.into_iter().map(Option::unwrap).collect();

    let dynamics = if numeric == Some(true) {
        let gamma: Vec<f64> = value.iter().map(|s| s.parse().unwrap()).collect();
        match gamma_tol {
            Some(eps) => DynamicsAssignment::from_gamma_with_tolerance(&gamma, eps)?,
            None => DynamicsAssignment::from_gamma(&gamma)?,
        }
    } else {
        DynamicsAssignment::from_labels(&value)
    };
    let names = match dynamics.poles() {
        Some(p) => p.iter().map(|x| x.to_string()).collect(),
        None => dynamics
            .partition()
            .blocks()
            .iter()
            .map(|b| value[b[0]].clone())
            .collect(),
    };
    Ok(Groups { dynamics, names })
}
