//! Seeded random graphs: `G(n, p)`, `G(n, m)` and the planted k-block model
//! in which same-block pairs are joined with probability `alpha / n` and
//! cross-block pairs with probability `beta / n`.
//!
//! Bernoulli pair sampling uses geometric skipping over the pairs in
//! lexicographic order, so the cost is proportional to `n` plus the number
//! of edges produced.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{below, geometric_skip, rng_from_seed, Rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "GNP")]
    Gnp,
    #[serde(rename = "GNM")]
    Gnm,
    #[serde(rename = "PLANTED")]
    Planted,
}

/// Parameters plus seed for one random graph. Only the fields belonging to
/// `model` may be set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub model: Model,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub seed: u64,
}

/// A graph together with the block label of every vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<u32>,
    pub k: usize,
}

impl GeneratorSpec {
    pub fn gnp(n: usize, p: f64, seed: u64) -> Self {
        GeneratorSpec { model: Model::Gnp, n, p: Some(p), m: None, alpha: None, beta: None, k: None, seed }
    }

    pub fn gnm(n: usize, m: u64, seed: u64) -> Self {
        GeneratorSpec { model: Model::Gnm, n, p: None, m: Some(m), alpha: None, beta: None, k: None, seed }
    }

    pub fn planted(n: usize, alpha: f64, beta: f64, k: usize, seed: u64) -> Self {
        GeneratorSpec {
            model: Model::Planted,
            n,
            p: None,
            m: None,
            alpha: Some(alpha),
            beta: Some(beta),
            k: Some(k),
            seed,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: GeneratorSpec =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let has = [
            ("p", self.p.is_some()),
            ("m", self.m.is_some()),
            ("alpha", self.alpha.is_some()),
            ("beta", self.beta.is_some()),
            ("k", self.k.is_some()),
        ];
        let wanted: &[&str] = match self.model {
            Model::Gnp => &["p"],
            Model::Gnm => &["m"],
            Model::Planted => &["alpha", "beta", "k"],
        };
        for (name, set) in has {
            if set != wanted.contains(&name) {
                return Err(Error::Config(format!(
                    "field `{name}` must {}be set for model {:?}",
                    if set { "not " } else { "" },
                    self.model
                )));
            }
        }
        match self.model {
            Model::Gnp => check_probability(self.p.unwrap()),
            Model::Gnm => check_edge_count(self.n, self.m.unwrap()),
            Model::Planted => {
                check_planted(self.n, self.alpha.unwrap(), self.beta.unwrap(), self.k.unwrap())
            }
        }
    }

    /// Generates the graph, dropping planted labels.
    pub fn generate(&self) -> Result<Graph> {
        Ok(self.generate_labeled()?.graph)
    }

    /// Generates the graph; labels are all zero (and `k = 1`) for the
    /// unlabelled models.
    pub fn generate_labeled(&self) -> Result<LabeledGraph> {
        self.validate()?;
        match self.model {
            Model::Gnp => Ok(unlabeled(gen_gnp(self.n, self.p.unwrap(), self.seed)?)),
            Model::Gnm => Ok(unlabeled(gen_gnm(self.n, self.m.unwrap(), self.seed)?)),
            Model::Planted => gen_planted(
                self.n,
                self.alpha.unwrap(),
                self.beta.unwrap(),
                self.k.unwrap(),
                self.seed,
            ),
        }
    }
}

fn unlabeled(graph: Graph) -> LabeledGraph {
    LabeledGraph {
        labels: vec![0; graph.n()],
        graph,
        k: 1,
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::RateOutOfRange(format!("p = {p} not in [0, 1]")));
    }
    Ok(())
}

fn check_edge_count(n: usize, m: u64) -> Result<()> {
    let pairs = pair_count(n);
    if m > pairs {
        return Err(Error::MTooLarge { m, pairs });
    }
    Ok(())
}

fn check_planted(n: usize, alpha: f64, beta: f64, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    let nf = n as f64;
    if !(alpha > 0.0 && alpha <= nf) {
        return Err(Error::RateOutOfRange(format!("alpha = {alpha} not in (0, n]")));
    }
    if !(beta >= 0.0 && beta <= nf) {
        return Err(Error::RateOutOfRange(format!("beta = {beta} not in [0, n]")));
    }
    Ok(())
}

pub fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Visits the cells of a ragged grid (row `r` has `row_len(r)` cells) that
/// survive independent Bernoulli(`p`) trials, in row-major order.
fn bernoulli_cells<L, F>(rows: usize, row_len: L, p: f64, rng: &mut Rng, mut emit: F)
where
    L: Fn(usize) -> u64,
    F: FnMut(usize, u64),
{
    if p <= 0.0 || rows == 0 {
        return;
    }
    if p >= 1.0 {
        for r in 0..rows {
            for c in 0..row_len(r) {
                emit(r, c);
            }
        }
        return;
    }
    let log_q = (-p).ln_1p();
    let mut row = 0usize;
    let mut col = 0u64;
    loop {
        col = col.saturating_add(geometric_skip(rng, log_q));
        while row < rows && col >= row_len(row) {
            col -= row_len(row);
            row += 1;
        }
        if row >= rows {
            return;
        }
        emit(row, col);
        col += 1;
    }
}

/// `G(n, p)`: each pair independently with probability `p`.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    let mut rng = rng_from_seed(seed);
    let expected = (pair_count(n) as f64 * p).min(1e9) as usize;
    let mut edges = Vec::with_capacity(expected + expected / 16 + 16);
    bernoulli_cells(
        n.saturating_sub(1),
        |u| (n - 1 - u) as u64,
        p,
        &mut rng,
        |u, c| edges.push((u as u32, (u as u64 + 1 + c) as u32)),
    );
    Ok(Graph::from_sorted_unique(n, edges))
}

/// `G(n, m)`: uniform over graphs with exactly `m` edges, via Floyd's
/// sampling of `m` distinct pair indices.
pub fn gen_gnm(n: usize, m: u64, seed: u64) -> Result<Graph> {
    check_edge_count(n, m)?;
    let total = pair_count(n);
    let mut rng = rng_from_seed(seed);
    let mut chosen: HashSet<u64> = HashSet::with_capacity(m as usize);
    for j in total - m..total {
        let t = below(&mut rng, j + 1);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let mut idx: Vec<u64> = chosen.into_iter().collect();
    idx.sort_unstable();
    // Walk rows in step with the sorted indices.
    let mut edges = Vec::with_capacity(idx.len());
    let mut u = 0usize;
    let mut row_start = 0u64;
    for i in idx {
        while i >= row_start + (n - 1 - u) as u64 {
            row_start += (n - 1 - u) as u64;
            u += 1;
        }
        edges.push((u as u32, (u as u64 + 1 + (i - row_start)) as u32));
    }
    Ok(Graph::from_sorted_unique(n, edges))
}

/// Planted k-block model: labels iid uniform on `0..k`; same-label pairs
/// joined with probability `alpha / n`, others with `beta / n`.
pub fn gen_planted(n: usize, alpha: f64, beta: f64, k: usize, seed: u64) -> Result<LabeledGraph> {
    check_planted(n, alpha, beta, k)?;
    let mut rng = rng_from_seed(seed);
    let labels: Vec<u32> = (0..n).map(|_| below(&mut rng, k as u64) as u32).collect();
    let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); k];
    for (v, &l) in labels.iter().enumerate() {
        blocks[l as usize].push(v as u32);
    }
    let (p_in, p_out) = (alpha / n as f64, beta / n as f64);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for a in 0..k {
        let ba = &blocks[a];
        bernoulli_cells(
            ba.len().saturating_sub(1),
            |i| (ba.len() - 1 - i) as u64,
            p_in,
            &mut rng,
            |i, c| edges.push((ba[i], ba[i + 1 + c as usize])),
        );
        for bb in &blocks[a + 1..] {
            bernoulli_cells(
                ba.len(),
                |_| bb.len() as u64,
                p_out,
                &mut rng,
                |i, c| {
                    let (x, y) = (ba[i], bb[c as usize]);
                    edges.push(if x < y { (x, y) } else { (y, x) });
                },
            );
        }
    }
    edges.sort_unstable();
    Ok(LabeledGraph {
        graph: Graph::from_sorted_unique(n, edges),
        labels,
        k,
    })
}
