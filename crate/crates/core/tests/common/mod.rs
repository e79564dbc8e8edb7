#![allow(dead_code)]

use netcomplexity::seed::Rng;
use netcomplexity::DirectedGraph;
use rand::Rng as _;

/// Largest set of edges with pairwise distinct starts and pairwise distinct
/// ends, by enumerating every subset of the edge list.
pub fn brute_force_matching(edges: &[(usize, usize)]) -> usize {
    assert!(edges.len() <= 20, "enumeration only for small edge sets");
    let mut best = 0;
    for mask in 0u32..(1 << edges.len()) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let chosen: Vec<_> = (0..edges.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| edges[i])
            .collect();
        let ok = chosen.iter().enumerate().all(|(i, a)| {
            chosen[..i].iter().all(|b| a.0 != b.0 && a.1 != b.1)
        });
        if ok {
            best = size;
        }
    }
    best
}

/// Directed graph on `n` nodes, each ordered pair (self-loops included when
/// `loops`) present with probability `density`.
pub fn random_graph(rng: &mut Rng, n: usize, density: f64, loops: bool) -> DirectedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if (u != v || loops) && rng.random::<f64>() < density {
                edges.push((u, v));
            }
        }
    }
    DirectedGraph::new(n, edges).unwrap()
}

/// Random graph with at most `max_edges` edges.
pub fn random_small_graph(rng: &mut Rng, max_n: usize, max_edges: usize) -> DirectedGraph {
    let n = rng.random_range(1..=max_n);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect();
    use rand::seq::SliceRandom;
    pairs.shuffle(rng);
    let m = rng.random_range(0..=max_edges.min(pairs.len()));
    pairs.truncate(m);
    DirectedGraph::new(n, pairs).unwrap()
}
