//! Partition constructions: the odd/even bisection and its Swap
//! improvement, planted-label partitions with isolated-vertex balancing,
//! greedy coarsening to a bounded number of parts, and the `f(k)` constant
//! for balanced k-part partitions of sparse random graphs.
//!
//! Vertex indexing: the 1-based labels `1..n` used when describing the Swap
//! algorithm map to indices `0..n-1`. Pair `i` (1-based, `i = 1..2k`) is
//! `a_i = 2i - 2`, `b_i = 2i - 1`, so the "odd" side of the bisection is the
//! set of even indices.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::LabeledGraph;
use crate::graph::{modularity_score, Graph, Partition};

/// Part 0 holds even indices (odd 1-based labels), part 1 the odd indices.
pub fn odd_even_bisection(n: usize) -> Result<Partition> {
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    Ok(Partition::new((0..n).map(|v| (v % 2) as u32).collect()).expect("both parts used"))
}

/// Record of one Swap run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SwapTrace {
    /// `floor(n / 6)`.
    pub k: usize,
    /// Entry `i - 1` is true iff pair `i` was swapped.
    pub swaps: Vec<bool>,
    /// `T_i = e(a_i, B1) - e(a_i, A1) + e(b_i, A1) - e(b_i, B1)`.
    pub t_values: Vec<i64>,
    /// `sum |T_i|`.
    pub t_star: u64,
    /// `e(V0, V1)`.
    pub v0_v1_edges: u64,
    /// `e(A0', B1) + e(A1, B0')` after swapping.
    pub v0_v1_cut: u64,
    /// `e(A', B')`: all edges crossing the returned bisection.
    pub final_cut: u64,
}

impl SwapTrace {
    pub fn swap_count(&self) -> usize {
        self.swaps.iter().filter(|&&s| s).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// Swap bisection. With `k = floor(n/6)`, `V0` is the first `4k` vertices,
/// `V1` the next `2k` and `V2` the remaining `<= 5`. Starting from the
/// odd/even bisection, pair `(a_i, b_i)` of `V0` trades sides iff `T_i > 0`,
/// where `T_i` only looks at edges between `V0` and `V1`. `V1` and `V2`
/// never move. Runs in `O(n + m)`.
pub fn swap_bisection(g: &Graph) -> Result<(Partition, SwapTrace)> {
    swap_bisection_with(g, true)
}

/// As [`swap_bisection`]; with `allow_swaps == false` every pair stays put
/// and the output is the odd/even bisection (the trace still records `T_i`).
pub fn swap_bisection_with(g: &Graph, allow_swaps: bool) -> Result<(Partition, SwapTrace)> {
    let n = g.n();
    if n < 6 {
        return Err(Error::TooSmall { n, min: 6 });
    }
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    let k = n / 6;
    let v1 = 4 * k..6 * k;
    // Inside V1 (which starts at an even index) A1 is the even indices.
    let side_counts = |x: usize| -> (i64, i64) {
        let mut to_a1 = 0;
        let mut to_b1 = 0;
        for &w in g.neighbors(x) {
            let w = w as usize;
            if v1.contains(&w) {
                if w % 2 == 0 {
                    to_a1 += 1;
                } else {
                    to_b1 += 1;
                }
            }
        }
        (to_a1, to_b1)
    };

    let mut assign: Vec<u32> = (0..n).map(|v| (v % 2) as u32).collect();
    let mut swaps = Vec::with_capacity(2 * k);
    let mut t_values = Vec::with_capacity(2 * k);
    let mut t_star = 0u64;
    let mut v0_v1_edges = 0u64;
    let mut v0_v1_cut = 0u64;
    for i in 0..2 * k {
        let (a, b) = (2 * i, 2 * i + 1);
        let (a_to_a1, a_to_b1) = side_counts(a);
        let (b_to_a1, b_to_b1) = side_counts(b);
        let t = a_to_b1 - a_to_a1 + b_to_a1 - b_to_b1;
        let swap = allow_swaps && t > 0;
        if swap {
            assign[a] = 1;
            assign[b] = 0;
        }
        t_values.push(t);
        swaps.push(swap);
        t_star += t.unsigned_abs();
        v0_v1_edges += (a_to_a1 + a_to_b1 + b_to_a1 + b_to_b1) as u64;
        // After the decision, a' sits on the A side and b' on the B side.
        v0_v1_cut += if swap {
            (b_to_b1 + a_to_a1) as u64
        } else {
            (a_to_b1 + b_to_a1) as u64
        };
    }
    let final_cut = g
        .edges()
        .iter()
        .filter(|&&(u, v)| assign[u as usize] != assign[v as usize])
        .count() as u64;
    let partition = Partition::new(assign).expect("both sides non-empty");
    Ok((
        partition,
        SwapTrace {
            k,
            swaps,
            t_values,
            t_star,
            v0_v1_edges,
            v0_v1_cut,
            final_cut,
        },
    ))
}

/// Partition by planted label. With `balance`, isolated vertices are moved
/// one at a time from a largest part to a smallest part while the sizes
/// differ by more than one; vertices with edges never move, so the score is
/// unchanged.
pub fn planted_partition(lg: &LabeledGraph, balance: bool) -> Result<Partition> {
    let mut p = Partition::from_labels(&lg.labels)?;
    if !balance {
        return Ok(p);
    }
    let g = &lg.graph;
    let mut assign = p.assignment().to_vec();
    let mut sizes = p.sizes();
    // Isolated vertices per part, highest index last so `pop` takes it.
    let mut spare: Vec<Vec<usize>> = vec![Vec::new(); p.k()];
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            spare[assign[v] as usize].push(v);
        }
    }
    loop {
        // Among largest parts, take the lowest id that still has an
        // isolated vertex to give.
        let max = *sizes.iter().max().unwrap();
        let (min_id, &min) = sizes
            .iter()
            .enumerate()
            .min_by_key(|&(i, &s)| (s, i))
            .unwrap();
        if max - min <= 1 {
            break;
        }
        let donor = (0..sizes.len()).find(|&i| sizes[i] == max && !spare[i].is_empty());
        let Some(donor) = donor else { break };
        let v = spare[donor].pop().unwrap();
        assign[v] = min_id as u32;
        spare[min_id].push(v);
        spare[min_id].sort_unstable();
        sizes[donor] -= 1;
        sizes[min_id] += 1;
    }
    p = Partition::new(assign)?;
    Ok(p)
}

/// `f(2) = 1/2`, `f(k) = sqrt(2 (k-1) ln(k-1)) / k` for `k >= 3`.
pub fn f_k(k: usize) -> Result<f64> {
    match k {
        0 | 1 => Err(Error::KTooSmall(k)),
        2 => Ok(0.5),
        _ => {
            let j = (k - 1) as f64;
            Ok((2.0 * j * j.ln()).sqrt() / k as f64)
        }
    }
}

/// One greedy merge: parts `keep` and `absorbed` (ids before the merge) and
/// the change in score it caused.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Merge {
    pub keep: usize,
    pub absorbed: usize,
    pub delta: f64,
}

/// Repeatedly merges the pair of parts whose merge changes the score the
/// most favourably until at most `k` parts remain (`k >= 1`).
pub fn coarsen_to_k(g: &Graph, p: &Partition, k: usize) -> Result<Partition> {
    Ok(coarsen_with_trace(g, p, k)?.0)
}

/// [`coarsen_to_k`] plus the sequence of merges it performed.
pub fn coarsen_with_trace(g: &Graph, p: &Partition, k: usize) -> Result<(Partition, Vec<Merge>)> {
    if k == 0 {
        return Err(Error::InvalidPartition("cannot coarsen to 0 parts".into()));
    }
    if p.n() != g.n() {
        return Err(Error::InvalidPartition("partition does not match graph".into()));
    }
    if p.k() <= k {
        return Ok((p.clone(), Vec::new()));
    }
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    let m = g.m() as f64;
    let mut vol = vec![0u64; p.k()];
    for v in 0..g.n() {
        vol[p.part_of(v)] += g.degree(v) as u64;
    }
    let mut between: HashMap<(usize, usize), u64> = HashMap::new();
    for &(u, v) in g.edges() {
        let (a, b) = (p.part_of(u as usize), p.part_of(v as usize));
        if a != b {
            *between.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    let mut alive: Vec<usize> = (0..p.k()).collect();
    let mut owner: Vec<usize> = (0..p.k()).collect();
    let mut merges = Vec::new();
    let delta = |a: usize, b: usize, vol: &[u64], between: &HashMap<(usize, usize), u64>| {
        let e = *between.get(&(a.min(b), a.max(b))).unwrap_or(&0) as f64;
        e / m - 2.0 * vol[a] as f64 * vol[b] as f64 / (4.0 * m * m)
    };
    while alive.len() > k {
        let mut best: Option<Merge> = None;
        for (i, &a) in alive.iter().enumerate() {
            for &b in &alive[i + 1..] {
                let d = delta(a, b, &vol, &between);
                if best.map_or(true, |bm| d > bm.delta) {
                    best = Some(Merge { keep: a, absorbed: b, delta: d });
                }
            }
        }
        let mv = best.expect("at least two parts alive");
        let (a, b) = (mv.keep, mv.absorbed);
        vol[a] += vol[b];
        let moved: Vec<((usize, usize), u64)> = between
            .iter()
            .filter(|(&(x, y), _)| x == b || y == b)
            .map(|(&key, &c)| (key, c))
            .collect();
        for ((x, y), c) in moved {
            between.remove(&(x, y));
            let other = if x == b { y } else { x };
            if other != a {
                *between.entry((a.min(other), a.max(other))).or_insert(0) += c;
            }
        }
        alive.retain(|&x| x != b);
        for o in owner.iter_mut() {
            if *o == b {
                *o = a;
            }
        }
        merges.push(mv);
    }
    let labels: Vec<usize> = p.assignment().iter().map(|&a| owner[a as usize]).collect();
    Ok((Partition::from_labels(&labels)?, merges))
}

/// Score of the partition produced by [`swap_bisection`].
pub fn swap_score(g: &Graph) -> Result<f64> {
    let (p, _) = swap_bisection(g)?;
    Ok(modularity_score(g, &p)?.q)
}
