use num_rational::Ratio;
use serde::Serialize;

use super::{Graph, Partition, UnionFind};
use crate::error::{Error, Result};

/// Edge contribution, degree tax and their difference for one
/// (graph, partition) pair, together with the integer counts they came from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModularityBreakdown {
    /// Fraction of edges inside parts.
    pub edge_contribution: f64,
    /// `sum_A vol(A)^2 / (2m)^2`.
    pub degree_tax: f64,
    /// `edge_contribution - degree_tax`.
    pub q: f64,
    pub m: u64,
    /// `sum_A e(A)`.
    pub within_edges: u64,
    /// `sum_A vol(A)^2`.
    pub sum_vol_sq: u128,
}

impl ModularityBreakdown {
    /// The score as an exact fraction `(4m e_in - sum vol^2) / 4m^2`.
    pub fn exact(&self) -> Ratio<i128> {
        let m = self.m as i128;
        Ratio::new(
            4 * m * self.within_edges as i128 - self.sum_vol_sq as i128,
            4 * m * m,
        )
    }
}

/// Modularity of `p` on `g`. Integer counts are exact; only the two final
/// divisions round.
pub fn modularity_score(g: &Graph, p: &Partition) -> Result<ModularityBreakdown> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    check_sizes(g, p)?;
    let assign = p.assignment();
    let mut vol = vec![0u64; p.k()];
    for v in 0..g.n() {
        vol[assign[v] as usize] += g.degree(v) as u64;
    }
    let within = g
        .edges()
        .iter()
        .filter(|&&(u, v)| assign[u as usize] == assign[v as usize])
        .count() as u64;
    let sum_vol_sq: u128 = vol.iter().map(|&x| (x as u128) * (x as u128)).sum();
    let m = g.m() as u64;
    let two_m = 2.0 * m as f64;
    let edge_contribution = within as f64 / m as f64;
    let degree_tax = sum_vol_sq as f64 / (two_m * two_m);
    Ok(ModularityBreakdown {
        edge_contribution,
        degree_tax,
        q: edge_contribution - degree_tax,
        m,
        within_edges: within,
        sum_vol_sq,
    })
}

fn check_sizes(g: &Graph, p: &Partition) -> Result<()> {
    if p.n() != g.n() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} vertices, graph has {}",
            p.n(),
            g.n()
        )));
    }
    Ok(())
}

/// Connected-components partition. Part ids follow the smallest vertex of
/// each component, so isolated vertices get their own parts.
pub fn connected_components(g: &Graph) -> Partition {
    assert!(g.n() >= 1, "graph has no vertices");
    let mut uf = UnionFind::new(g.n());
    for &(u, v) in g.edges() {
        uf.union(u as usize, v as usize);
    }
    let roots: Vec<usize> = (0..g.n()).map(|v| uf.find(v)).collect();
    Partition::from_labels(&roots).expect("non-empty")
}

/// Size, edge count and volume of one connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentStats {
    pub size: usize,
    pub edges: usize,
    pub vol: u64,
}

/// One record per component, in the order of [`connected_components`].
pub fn component_stats(g: &Graph) -> Vec<ComponentStats> {
    if g.n() == 0 {
        return Vec::new();
    }
    let cc = connected_components(g);
    let mut stats = vec![
        ComponentStats {
            size: 0,
            edges: 0,
            vol: 0
        };
        cc.k()
    ];
    for v in 0..g.n() {
        let s = &mut stats[cc.part_of(v)];
        s.size += 1;
        s.vol += g.degree(v) as u64;
    }
    for &(u, _) in g.edges() {
        stats[cc.part_of(u as usize)].edges += 1;
    }
    stats
}

/// Checks the four degree-tax inequalities for a partition with `k >= 2`
/// parts, in exact integer arithmetic: with `x >= y` the two largest part
/// volumes, `q_D >= 1/k`, `(x/2m)^2 <= q_D <= x/2m` and
/// `q_D <= (x/2m)^2 + y/2m`.
pub fn degree_tax_bounds_check(g: &Graph, p: &Partition) -> Result<bool> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    check_sizes(g, p)?;
    if p.k() < 2 {
        return Err(Error::InvalidPartition(format!(
            "need at least 2 parts, got {}",
            p.k()
        )));
    }
    let mut vol = vec![0u128; p.k()];
    for v in 0..g.n() {
        vol[p.part_of(v)] += g.degree(v) as u128;
    }
    vol.sort_unstable_by(|a, b| b.cmp(a));
    let (x, y) = (vol[0], vol[1]);
    let s: u128 = vol.iter().map(|v| v * v).sum();
    let two_m = 2 * g.m() as u128;
    let k = p.k() as u128;
    Ok(k * s >= two_m * two_m && x * x <= s && s <= x * two_m && s <= x * x + y * two_m)
}
