use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::graph::Graph;

/// Outcome of [`prune`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PruneResult {
    /// Surviving vertices, ascending.
    pub kept: Vec<usize>,
    /// Edges with at least one removed endpoint.
    pub removed_edges: usize,
    /// Vertices removed by the low-degree rule.
    pub low_degree_removed: usize,
    /// Removals performed by the neighbour-cap loop.
    pub rounds: usize,
}

impl PruneResult {
    pub fn kept_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.kept {
            mask[v] = true;
        }
        mask
    }

    /// Subgraph induced by the kept vertices, with the label mapping.
    pub fn kept_subgraph(&self, g: &Graph) -> (Graph, Vec<usize>) {
        g.induced_subgraph(&self.kept_mask(g.n()))
    }
}

/// Drops every vertex of degree below `degree_factor * (n-1) * p_model`,
/// then repeatedly drops the lowest-index surviving vertex that has at least
/// `neighbor_cap` removed neighbours, until none is left.
pub fn prune(g: &Graph, p_model: f64, degree_factor: f64, neighbor_cap: usize) -> PruneResult {
    assert!(p_model > 0.0 && p_model <= 1.0, "p_model must lie in (0, 1]");
    let n = g.n();
    let threshold = degree_factor * n.saturating_sub(1) as f64 * p_model;
    let mut removed: Vec<bool> = (0..n).map(|v| (g.degree(v) as f64) < threshold).collect();
    let low_degree_removed = removed.iter().filter(|&&r| r).count();

    let mut removed_nbrs = vec![0usize; n];
    for v in (0..n).filter(|&v| removed[v]) {
        for &w in g.neighbors(v) {
            removed_nbrs[w as usize] += 1;
        }
    }
    let mut queue: BinaryHeap<Reverse<usize>> = (0..n)
        .filter(|&v| !removed[v] && removed_nbrs[v] >= neighbor_cap)
        .map(Reverse)
        .collect();
    let mut rounds = 0;
    while let Some(Reverse(v)) = queue.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        rounds += 1;
        for &w in g.neighbors(v) {
            let w = w as usize;
            removed_nbrs[w] += 1;
            if !removed[w] && removed_nbrs[w] == neighbor_cap {
                queue.push(Reverse(w));
            }
        }
    }

    let removed_edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| removed[u as usize] || removed[v as usize])
        .count();
    PruneResult {
        kept: (0..n).filter(|&v| !removed[v]).collect(),
        removed_edges,
        low_degree_removed,
        rounds,
    }
}
