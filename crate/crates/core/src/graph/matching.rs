//! Maximum cardinality bipartite matching (Hopcroft–Karp).

use std::collections::VecDeque;

const UNREACHED: u32 = u32::MAX;

/// Result of [`hopcroft_karp`].
///
/// `left_match[x] == Some(y)` iff `right_match[y] == Some(x)` iff `(x, y)` is in
/// the matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteMatching {
    pub size: usize,
    pub left_match: Vec<Option<usize>>,
    pub right_match: Vec<Option<usize>>,
}

impl BipartiteMatching {
    /// Matched pairs `(left, right)` in ascending left order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left_match
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| (x, y)))
    }
}

/// Maximum matching of the bipartite graph with `adj.len()` left vertices,
/// `right` right vertices and edges `x -> adj[x][..]`.
///
/// Phases and augmenting-path searches visit vertices in ascending index order
/// and neighbours in the order given, so the matching itself (not only its
/// size) is a deterministic function of the input. O(E √V).
pub fn hopcroft_karp(right: usize, adj: &[Vec<usize>]) -> BipartiteMatching {
    let left = adj.len();
    let mut left_match = vec![None; left];
    let mut right_match = vec![None; right];
    let mut dist = vec![UNREACHED; left];
    let mut next = vec![0usize; left];
    let mut stack: Vec<usize> = Vec::new();

    while layer(adj, &left_match, &right_match, &mut dist) {
        next.iter_mut().for_each(|p| *p = 0);
        for root in 0..left {
            if left_match[root].is_none() {
                augment(
                    root,
                    adj,
                    &mut dist,
                    &mut next,
                    &mut stack,
                    &mut left_match,
                    &mut right_match,
                );
            }
        }
    }

    let size = left_match.iter().filter(|m| m.is_some()).count();
    BipartiteMatching {
        size,
        left_match,
        right_match,
    }
}

/// BFS from all free left vertices over alternating paths. Returns whether a
/// free right vertex is reachable.
fn layer(
    adj: &[Vec<usize>],
    left_match: &[Option<usize>],
    right_match: &[Option<usize>],
    dist: &mut [u32],
) -> bool {
    let mut queue = VecDeque::new();
    for (x, m) in left_match.iter().enumerate() {
        if m.is_none() {
            dist[x] = 0;
            queue.push_back(x);
        } else {
            dist[x] = UNREACHED;
        }
    }
    let mut found = false;
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            match right_match[y] {
                None => found = true,
                Some(z) if dist[z] == UNREACHED => {
                    dist[z] = dist[x] + 1;
                    queue.push_back(z);
                }
                Some(_) => {}
            }
        }
    }
    found
}

/// Iterative layered DFS from `root`; flips the path if it ends at a free
/// right vertex. Dead-end vertices are removed from the layering.
fn augment(
    root: usize,
    adj: &[Vec<usize>],
    dist: &mut [u32],
    next: &mut [usize],
    stack: &mut Vec<usize>,
    left_match: &mut [Option<usize>],
    right_match: &mut [Option<usize>],
) -> bool {
    stack.clear();
    stack.push(root);
    while let Some(&x) = stack.last() {
        if next[x] == adj[x].len() {
            dist[x] = UNREACHED;
            stack.pop();
            continue;
        }
        let y = adj[x][next[x]];
        match right_match[y] {
            None => {
                // Flip along the stack: each left vertex takes the right
                // vertex its cursor currently points at.
                for &u in stack.iter() {
                    let v = adj[u][next[u]];
                    left_match[u] = Some(v);
                    right_match[v] = Some(u);
                }
                return true;
            }
            Some(z) if dist[z] != UNREACHED && dist[z] == dist[x] + 1 => {
                stack.push(z);
            }
            Some(_) => next[x] += 1,
        }
    }
    false
}
