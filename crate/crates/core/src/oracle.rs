//! Exact maximum modularity of small graphs by enumerating every set
//! partition of the non-isolated vertices.
//!
//! Partitions are generated as restricted-growth strings in lexicographic
//! order by depth-first search; the edge count inside blocks is maintained
//! incrementally with neighbour bitmasks. Scores are compared as the integer
//! `4m * e_in - sum vol^2` (the score times `4m^2`), so ties are exact.
//! Isolated vertices are left out of the search and re-attached as
//! singleton parts, which never changes a score.
//!
//! The module also hosts the structural checks that are theorems about
//! optimal partitions (resolution limit, connected parts, robustness under
//! edge changes) and the root of `x e^{-x} = c e^{-c}` on `(0, 1)`.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{component_stats, connected_components, Graph, Partition};

/// Default limit on non-isolated vertices (Bell(10) = 115975 partitions).
pub const DEFAULT_ORACLE_CAP: usize = 10;
/// Hard limit (Bell(12) = 4213597 partitions).
pub const MAX_ORACLE_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub q_star: f64,
    pub q_star_exact: Ratio<i64>,
    /// Every maximizer, isolated vertices as trailing singletons, in
    /// lexicographic order of their restricted-growth strings.
    pub optimal_partitions: Vec<Partition>,
    pub partitions_scanned: u64,
}

struct Search {
    r: usize,
    lower: Vec<u16>,
    deg: Vec<i64>,
    four_m: i64,
    k_limit: usize,
    collect: bool,
    block_mask: Vec<u16>,
    block_vol: Vec<i64>,
    rgs: Vec<u8>,
    best: i64,
    best_k: i64,
    maximizers: Vec<Vec<u8>>,
    scanned: u64,
}

impl Search {
    fn run(&mut self, i: usize, blocks: usize, within: i64) {
        if i == self.r {
            self.scanned += 1;
            let sq: i64 = self.block_vol[..blocks].iter().map(|v| v * v).sum();
            let s = self.four_m * within - sq;
            if blocks <= self.k_limit && s > self.best_k {
                self.best_k = s;
            }
            if s > self.best {
                self.best = s;
                if self.collect {
                    self.maximizers.clear();
                    self.maximizers.push(self.rgs.clone());
                }
            } else if s == self.best && self.collect {
                self.maximizers.push(self.rgs.clone());
            }
            return;
        }
        let bit = 1u16 << i;
        for b in 0..=blocks.min(self.r - 1) {
            if b == blocks && b >= self.block_mask.len() {
                break;
            }
            let gained = (self.lower[i] & self.block_mask[b]).count_ones() as i64;
            self.block_mask[b] |= bit;
            self.block_vol[b] += self.deg[i];
            self.rgs[i] = b as u8;
            self.run(i + 1, blocks.max(b + 1), within + gained);
            self.block_mask[b] &= !bit;
            self.block_vol[b] -= self.deg[i];
        }
    }
}

struct Enumeration {
    best: i64,
    best_k: i64,
    maximizers: Vec<Vec<u8>>,
    scanned: u64,
    core: Vec<usize>,
}

fn enumerate(g: &Graph, cap: usize, k_limit: usize, collect: bool) -> Result<Enumeration> {
    if cap > MAX_ORACLE_CAP {
        return Err(Error::TooLarge { size: cap, cap: MAX_ORACLE_CAP });
    }
    let core: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
    let r = core.len();
    if r > cap {
        return Err(Error::TooLarge { size: r, cap });
    }
    if r > DEFAULT_ORACLE_CAP {
        log::warn!("exhaustive search over {r} vertices; this scans millions of partitions");
    }
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in core.iter().enumerate() {
        local[v] = i;
    }
    let mut lower = vec![0u16; r];
    for &(u, v) in g.edges() {
        let (a, b) = (local[u as usize], local[v as usize]);
        let (lo, hi) = (a.min(b), a.max(b));
        lower[hi] |= 1 << lo;
    }
    let m = g.m() as i64;
    let mut s = Search {
        r,
        lower,
        deg: core.iter().map(|&v| g.degree(v) as i64).collect(),
        four_m: 4 * m,
        k_limit,
        collect,
        block_mask: vec![0; r],
        block_vol: vec![0; r],
        rgs: vec![0; r],
        best: i64::MIN,
        best_k: i64::MIN,
        maximizers: Vec::new(),
        scanned: 0,
    };
    s.run(0, 0, 0);
    Ok(Enumeration { best: s.best, best_k: s.best_k, maximizers: s.maximizers, scanned: s.scanned, core })
}

fn expand(g: &Graph, core: &[usize], rgs: &[u8]) -> Partition {
    let mut labels = vec![usize::MAX; g.n()];
    for (i, &v) in core.iter().enumerate() {
        labels[v] = rgs[i] as usize;
    }
    let mut next = rgs.iter().map(|&b| b as usize + 1).max().unwrap_or(0);
    for l in labels.iter_mut().filter(|l| **l == usize::MAX) {
        *l = next;
        next += 1;
    }
    Partition::from_labels(&labels).expect("non-empty")
}

fn to_ratio(numer: i64, m: usize) -> Ratio<i64> {
    let m = m as i64;
    Ratio::new(numer, 4 * m * m)
}

/// Exact `q*` with all maximizers. Graphs without edges score 0 by
/// convention (no partitions are listed then).
pub fn exact_modularity(g: &Graph, cap: usize) -> Result<OracleResult> {
    if g.m() == 0 {
        return Ok(OracleResult {
            q_star: 0.0,
            q_star_exact: Ratio::from_integer(0),
            optimal_partitions: Vec::new(),
            partitions_scanned: 0,
        });
    }
    let e = enumerate(g, cap, usize::MAX, true)?;
    let exact = to_ratio(e.best, g.m());
    Ok(OracleResult {
        q_star: ratio_f64(exact),
        q_star_exact: exact,
        optimal_partitions: e.maximizers.iter().map(|rgs| expand(g, &e.core, rgs)).collect(),
        partitions_scanned: e.scanned,
    })
}

/// Exact `q*` only (no maximizer bookkeeping).
pub fn exact_q_star(g: &Graph, cap: usize) -> Result<Ratio<i64>> {
    if g.m() == 0 {
        return Ok(Ratio::from_integer(0));
    }
    Ok(to_ratio(enumerate(g, cap, usize::MAX, false)?.best, g.m()))
}

/// Best score over partitions with at most `k` parts, exactly, together with
/// the unrestricted optimum.
pub fn exact_modularity_k_ratio(g: &Graph, k: usize, cap: usize) -> Result<(Ratio<i64>, Ratio<i64>)> {
    if k == 0 {
        return Err(Error::InvalidPartition("k must be at least 1".into()));
    }
    if g.m() == 0 {
        let zero = Ratio::from_integer(0);
        return Ok((zero, zero));
    }
    let e = enumerate(g, cap, k, false)?;
    let (qk, q) = (to_ratio(e.best_k, g.m()), to_ratio(e.best, g.m()));
    let kk = Ratio::from_integer(k as i64);
    assert!(qk <= q, "restricted optimum exceeds the optimum");
    assert!(
        qk >= q * (kk - 1) / kk,
        "at-most-{k}-part optimum {qk} below q* (1 - 1/k) with q* = {q}"
    );
    Ok((qk, q))
}

/// `max` of the score over partitions with at most `k` parts.
pub fn exact_modularity_k(g: &Graph, k: usize, cap: usize) -> Result<f64> {
    Ok(ratio_f64(exact_modularity_k_ratio(g, k, cap)?.0))
}

pub fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// True iff every component with fewer than `sqrt(2m)` edges lies inside a
/// single part of every optimal partition.
pub fn resolution_limit_check(g: &Graph, cap: usize) -> Result<bool> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    let res = exact_modularity(g, cap)?;
    let cc = connected_components(g);
    let stats = component_stats(g);
    let two_m = 2 * g.m();
    let small: Vec<Vec<usize>> = cc
        .parts()
        .into_iter()
        .zip(&stats)
        .filter(|(_, s)| s.edges * s.edges < two_m)
        .map(|(part, _)| part)
        .collect();
    Ok(res.optimal_partitions.iter().all(|p| {
        small
            .iter()
            .all(|comp| comp.iter().all(|&v| p.part_of(v) == p.part_of(comp[0])))
    }))
}

/// True iff every part of every optimal partition induces a connected
/// subgraph and has at least two vertices.
pub fn optimal_connectivity_check(g: &Graph, cap: usize) -> Result<bool> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let res = exact_modularity(g, cap)?;
    Ok(res
        .optimal_partitions
        .iter()
        .all(|p| p.parts().iter().all(|part| part.len() >= 2 && induces_connected(g, p, part))))
}

fn induces_connected(g: &Graph, p: &Partition, part: &[usize]) -> bool {
    let id = p.part_of(part[0]);
    let mut seen = vec![false; g.n()];
    let mut stack = vec![part[0]];
    seen[part[0]] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            let w = w as usize;
            if !seen[w] && p.part_of(w) == id {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached == part.len()
}

/// Outcome of a robustness check: `ok` iff `delta < bound`, decided exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RobustnessCheck {
    pub delta: f64,
    pub bound: f64,
    pub ok: bool,
    pub delta_exact: Ratio<i64>,
    pub bound_exact: Ratio<i64>,
}

fn robustness(q1: Ratio<i64>, q2: Ratio<i64>, bound: Ratio<i64>) -> RobustnessCheck {
    let diff = q1 - q2;
    let delta = if diff < Ratio::from_integer(0) { -diff } else { diff };
    RobustnessCheck {
        delta: ratio_f64(delta),
        bound: ratio_f64(bound),
        ok: delta < bound,
        delta_exact: delta,
        bound_exact: bound,
    }
}

fn normalized(e: &[(usize, usize)]) -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = e
        .iter()
        .map(|&(a, b)| (a.min(b) as u32, a.max(b) as u32))
        .collect();
    v.sort_unstable();
    v
}

/// Deleting the edges `e0` from `g`: checks `|q*(G) - q*(G - E0)| < 2|E0|/|E|`.
pub fn robustness_delete_check(g: &Graph, e0: &[(usize, usize)], cap: usize) -> Result<RobustnessCheck> {
    if e0.is_empty() {
        return Err(Error::InvalidEdgeSubset("E0 must be non-empty".into()));
    }
    let e0n = normalized(e0);
    if e0n.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidEdgeSubset("E0 lists an edge twice".into()));
    }
    if let Some(&(u, v)) = e0n.iter().find(|&&(u, v)| !g.has_edge(u as usize, v as usize)) {
        return Err(Error::InvalidEdgeSubset(format!("{{{u}, {v}}} is not an edge")));
    }
    let g2 = g.without_edges(e0);
    let bound = Ratio::new(2 * e0.len() as i64, g.m() as i64);
    Ok(robustness(exact_q_star(g, cap)?, exact_q_star(&g2, cap)?, bound))
}

fn symmetric_difference(a: &Graph, b: &Graph) -> (usize, usize) {
    // (|A \ B|, |B \ A|) by merging the sorted edge lists.
    let (ea, eb) = (a.edges(), b.edges());
    let (mut i, mut j, mut only_a, mut only_b) = (0, 0, 0, 0);
    while i < ea.len() && j < eb.len() {
        match ea[i].cmp(&eb[j]) {
            std::cmp::Ordering::Less => {
                only_a += 1;
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                only_b += 1;
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    (only_a + ea.len() - i, only_b + eb.len() - j)
}

/// Two graphs with the same vertex set and edge count: checks
/// `|q*(G) - q*(G')| < |E △ E'| / m`.
pub fn robustness_rewire_check(g: &Graph, g2: &Graph, cap: usize) -> Result<RobustnessCheck> {
    if g.n() != g2.n() {
        return Err(Error::DifferentN(g.n(), g2.n()));
    }
    if g.m() != g2.m() {
        return Err(Error::DifferentM(g.m(), g2.m()));
    }
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g == g2 {
        return Err(Error::IdenticalGraphs);
    }
    let (a, b) = symmetric_difference(g, g2);
    let bound = Ratio::new((a + b) as i64, g.m() as i64);
    Ok(robustness(exact_q_star(g, cap)?, exact_q_star(g2, cap)?, bound))
}

/// Distinct graphs on one vertex set with `|E| >= |E'|`: checks
/// `|q*(G) - q*(G')| < 2 |E \ E'| / |E|`.
pub fn robustness_general_check(g: &Graph, g2: &Graph, cap: usize) -> Result<RobustnessCheck> {
    if g.n() != g2.n() {
        return Err(Error::DifferentN(g.n(), g2.n()));
    }
    if g.m() < g2.m() {
        return Err(Error::InvalidEdgeSubset(format!(
            "first graph needs at least as many edges as the second ({} < {})",
            g.m(),
            g2.m()
        )));
    }
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g == g2 {
        return Err(Error::IdenticalGraphs);
    }
    let (only_g, _) = symmetric_difference(g, g2);
    let bound = Ratio::new(2 * only_g as i64, g.m() as i64);
    Ok(robustness(exact_q_star(g, cap)?, exact_q_star(g2, cap)?, bound))
}

/// The root `x` in `(0, 1)` of `x e^{-x} = c e^{-c}` for `c > 1`, by
/// bisection on the increasing branch.
pub fn solve_dual(c: f64) -> Result<f64> {
    if !(c > 1.0) || !c.is_finite() {
        return Err(Error::COutOfRange(c));
    }
    let target = (c.ln() - c).exp();
    let f = |x: f64| x * (-x).exp();
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_scores_zero() {
        let r = exact_modularity(&Graph::complete(5), DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(r.q_star_exact, Ratio::from_integer(0));
        assert_eq!(r.partitions_scanned, 52);
    }

    #[test]
    fn three_disjoint_edges() {
        let g = Graph::matching(3);
        let r = exact_modularity(&g, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(r.q_star_exact, Ratio::new(2, 3));
        assert_eq!(r.optimal_partitions, vec![connected_components(&g)]);
    }

    #[test]
    fn path_p4() {
        let r = exact_modularity(&Graph::path(4), DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(r.q_star_exact, Ratio::new(1, 6));
        assert_eq!(
            r.optimal_partitions,
            vec![Partition::from_parts(4, &[vec![0, 1], vec![2, 3]]).unwrap()]
        );
    }

    #[test]
    fn single_edge_with_isolated_vertices() {
        let g = Graph::new(4, [(1, 2)]).unwrap();
        let r = exact_modularity(&g, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(r.q_star, 0.0);
        // The edge's endpoints share a part; 0 and 3 are singletons.
        assert_eq!(r.optimal_partitions.len(), 1);
        assert_eq!(r.optimal_partitions[0].k(), 3);
    }

    #[test]
    fn empty_graph_convention() {
        let r = exact_modularity(&Graph::empty(4), DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(r.q_star, 0.0);
        assert!(r.optimal_partitions.is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            exact_modularity(&Graph::path(11), DEFAULT_ORACLE_CAP),
            Err(Error::TooLarge { size: 11, cap: 10 })
        );
        assert!(exact_modularity(&Graph::path(3), 13).is_err());
        // Isolated vertices do not count against the cap.
        let g = Graph::new(20, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(exact_q_star(&g, DEFAULT_ORACLE_CAP).unwrap(), Ratio::new(1, 2));
    }

    #[test]
    fn restricted_optimum() {
        let g = Graph::matching(3);
        let (q1, _) = exact_modularity_k_ratio(&g, 1, 10).unwrap();
        assert_eq!(q1, Ratio::from_integer(0));
        let (q2, q) = exact_modularity_k_ratio(&g, 2, 10).unwrap();
        // Two components merged: q_E = 1, q_D = (4^2 + 2^2) / 36.
        assert_eq!(q2, Ratio::new(4, 9));
        assert_eq!(q, Ratio::new(2, 3));
        assert_eq!(exact_modularity_k(&g, 3, 10).unwrap(), 2.0 / 3.0);
    }

    #[test]
    fn resolution_limit_examples() {
        // Two triangles joined by an edge.
        let g = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        assert!(resolution_limit_check(&g, 10).unwrap());
        assert!(resolution_limit_check(&Graph::matching(3), 10).unwrap());
    }

    #[test]
    fn connectivity_examples() {
        assert!(optimal_connectivity_check(&Graph::path(4), 10).unwrap());
        assert!(optimal_connectivity_check(&Graph::cycle(5), 10).unwrap());
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(optimal_connectivity_check(&g, 10), Err(Error::IsolatedVertex(2)));
    }

    #[test]
    fn delete_one_of_three_disjoint_edges() {
        let r = robustness_delete_check(&Graph::matching(3), &[(4, 5)], 10).unwrap();
        assert_eq!(r.delta_exact, Ratio::new(1, 6));
        assert_eq!(r.bound_exact, Ratio::new(2, 3));
        assert!(r.ok);
        let all = robustness_delete_check(&Graph::matching(3), &[(0, 1), (2, 3), (4, 5)], 10).unwrap();
        assert_eq!(all.bound_exact, Ratio::from_integer(2));
        assert!(all.ok);
        assert!(robustness_delete_check(&Graph::matching(3), &[(1, 2)], 10).is_err());
        assert!(robustness_delete_check(&Graph::matching(3), &[], 10).is_err());
    }

    #[test]
    fn matching_to_path_rewire() {
        let g = Graph::matching(3);
        // Move edge {4,5} to {1,2}: path 0-1-2-3 plus isolated 4 and 5.
        let g2 = Graph::new(6, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let r = robustness_rewire_check(&g, &g2, 10).unwrap();
        assert_eq!(r.delta_exact, Ratio::new(1, 2));
        assert_eq!(r.bound_exact, Ratio::new(2, 3));
        assert!(r.ok);
        assert_eq!(robustness_rewire_check(&g, &g, 10), Err(Error::IdenticalGraphs));
        assert!(matches!(
            robustness_rewire_check(&g, &Graph::path(6), 10),
            Err(Error::DifferentM(3, 5))
        ));
    }

    #[test]
    fn general_check_nested() {
        let g = Graph::path(4);
        let g2 = Graph::new(4, [(0, 1), (1, 2)]).unwrap();
        let r = robustness_general_check(&g, &g2, 10).unwrap();
        assert_eq!(r.bound_exact, Ratio::new(2, 3));
        assert!(r.ok);
        assert!(robustness_general_check(&g2, &g, 10).is_err());
    }

    #[test]
    fn dual_root() {
        let x = solve_dual(2.0).unwrap();
        assert!((x - 0.40637).abs() < 1e-5);
        assert!((x * (-x).exp() - 2.0 * (-2.0f64).exp()).abs() <= 1e-12);
        let x = solve_dual(1.25).unwrap();
        assert!(x > 0.75 && x < 0.875);
        let x = solve_dual(1.0 + 1e-9).unwrap();
        assert!((x - 1.0).abs() < 1e-3);
        assert_eq!(solve_dual(1.0), Err(Error::COutOfRange(1.0)));
    }
}
