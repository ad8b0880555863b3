//! Simple undirected graphs, vertex partitions and modularity scoring.
//!
//! A [`Graph`] is immutable once built. Edges are kept as a sorted list of
//! `(u, v)` pairs with `u < v`, alongside a CSR adjacency structure whose
//! per-vertex neighbour lists are sorted. Degrees are read off the CSR
//! offsets, so they can never drift from the edge set.

mod io;
mod modularity;
mod partition;
mod union_find;

pub use io::{read_edge_list, write_edge_list, parse_edge_list, format_edge_list};
pub use modularity::{
    component_stats, connected_components, degree_tax_bounds_check, modularity_score,
    ComponentStats, ModularityBreakdown,
};
pub use partition::{parse_partition, format_partition, read_partition, write_partition, Partition};
pub use union_find::UnionFind;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl Graph {
    /// Builds a graph from arbitrary `(u, v)` pairs. Rejects self-loops,
    /// out-of-range endpoints and duplicate edges (in either orientation).
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        assert!(n <= u32::MAX as usize, "vertex count exceeds u32 range");
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            list.push((a as u32, b as u32));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0 as usize, w[0].1 as usize));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    /// Builds a graph from an edge list that is already strictly increasing
    /// with `u < v < n` in every pair.
    pub(crate) fn from_sorted_unique(n: usize, edges: Vec<(u32, u32)>) -> Self {
        debug_assert!(edges.iter().all(|&(u, v)| u < v && (v as usize) < n));
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in &edges {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut neighbors = vec![0u32; 2 * edges.len()];
        // Lexicographic edge order makes every neighbour list come out sorted.
        for &(u, v) in &edges {
            neighbors[fill[u as usize]] = v;
            fill[u as usize] += 1;
            neighbors[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        Graph {
            n,
            edges,
            offsets,
            neighbors,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u as u32, v as u32));
            }
        }
        Self::from_sorted_unique(n, edges)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| ((v - 1) as u32, v as u32)).collect();
        Self::from_sorted_unique(n, edges)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    /// `count` disjoint edges `{2i, 2i+1}` on `2 * count` vertices.
    pub fn matching(count: usize) -> Self {
        let edges = (0..count)
            .map(|i| ((2 * i) as u32, (2 * i + 1) as u32))
            .collect();
        Self::from_sorted_unique(2 * count, edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Sorted neighbour list of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n {
            return false;
        }
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Sum of degrees over `vertices`.
    pub fn volume<I: IntoIterator<Item = usize>>(&self, vertices: I) -> u64 {
        vertices.into_iter().map(|v| self.degree(v) as u64).sum()
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 0).collect()
    }

    pub fn has_isolated_vertices(&self) -> bool {
        (0..self.n).any(|v| self.degree(v) == 0)
    }

    /// Subgraph induced by the vertices with `keep[v] == true`, relabelled
    /// to `0..count` in increasing order. Returns the graph and, for each new
    /// label, the original vertex.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (Graph, Vec<usize>) {
        assert_eq!(keep.len(), self.n);
        let mut new_id = vec![u32::MAX; self.n];
        let mut mapping = Vec::new();
        for v in 0..self.n {
            if keep[v] {
                new_id[v] = mapping.len() as u32;
                mapping.push(v);
            }
        }
        // Relabelling is monotone, so the filtered edge list stays sorted.
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep[u as usize] && keep[v as usize])
            .map(|&(u, v)| (new_id[u as usize], new_id[v as usize]))
            .collect();
        (Graph::from_sorted_unique(mapping.len(), edges), mapping)
    }

    /// Removes isolated vertices. The mapping gives the original label of each
    /// retained vertex.
    pub fn strip_isolated(&self) -> (Graph, Vec<usize>) {
        let keep: Vec<bool> = (0..self.n).map(|v| self.degree(v) > 0).collect();
        self.induced_subgraph(&keep)
    }

    /// Same vertex set, with the listed edges removed. Edges not present are
    /// ignored.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Graph {
        let mut drop: Vec<(u32, u32)> = removed
            .iter()
            .map(|&(u, v)| if u < v { (u as u32, v as u32) } else { (v as u32, u as u32) })
            .collect();
        drop.sort_unstable();
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| drop.binary_search(e).is_err())
            .collect();
        Graph::from_sorted_unique(self.n, edges)
    }

    /// Applies the vertex permutation `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::new(
            self.n,
            self.edges
                .iter()
                .map(|&(u, v)| (perm[u as usize], perm[v as usize])),
        )
        .expect("a permutation preserves simplicity")
    }

    /// Number of edges with both endpoints satisfying `inside`.
    pub fn edges_within<F: Fn(usize) -> bool>(&self, inside: F) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| inside(u as usize) && inside(v as usize))
            .count()
    }

    /// Number of edges with exactly one endpoint satisfying `inside`.
    pub fn edges_across<F: Fn(usize) -> bool>(&self, inside: F) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| inside(u as usize) != inside(v as usize))
            .count()
    }
}
