use serde::Serialize;

use super::spectral_summary;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::rng_from_seed;
use rand_core::RngCore;

/// Largest vertex count audited exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Which vertex sets to audit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SamplingPlan {
    /// All `2^n` subsets (`n <= 20`).
    Exhaustive,
    /// `samples` uniform random subsets.
    Random { samples: usize, seed: u64 },
    /// Exhaustive when `n <= 20`, random otherwise.
    Auto { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscrepancyReport {
    pub gap: f64,
    /// Minimum over audited `S` of `e(S, S̄) - (1 - gap) vol(S) vol(S̄) / vol(G)`.
    pub min_slack: f64,
    /// A set attaining the minimum.
    pub worst_set: Vec<usize>,
    pub audited: u64,
}

/// Audits the edge-discrepancy inequality implied by the spectral gap.
pub fn discrepancy_audit(g: &Graph, plan: SamplingPlan) -> Result<DiscrepancyReport> {
    let gap = spectral_summary(g)?.gap;
    let n = g.n();
    let vol_g = 2.0 * g.m() as f64;
    let slack = |cut: u64, vol: u64| {
        let vol = vol as f64;
        cut as f64 - (1.0 - gap) * vol * (vol_g - vol) / vol_g
    };
    let exhaustive = match plan {
        SamplingPlan::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(Error::TooLarge { size: n, cap: EXHAUSTIVE_LIMIT });
            }
            true
        }
        SamplingPlan::Random { .. } => false,
        SamplingPlan::Auto { .. } => n <= EXHAUSTIVE_LIMIT,
    };

    let mut report = DiscrepancyReport { gap, min_slack: 0.0, worst_set: Vec::new(), audited: 0 };
    if exhaustive {
        // Gray-code walk: one vertex flips per step.
        let mut in_set = vec![false; n];
        let (mut cut, mut vol) = (0u64, 0u64);
        let mut best_code = 0u64;
        report.audited = 1;
        for i in 1u64..(1u64 << n) {
            let v = i.trailing_zeros() as usize;
            let d = g.degree(v) as u64;
            let inside = g.neighbors(v).iter().filter(|&&w| in_set[w as usize]).count() as u64;
            if in_set[v] {
                cut = cut + 2 * inside - d;
                vol -= d;
            } else {
                cut = cut + d - 2 * inside;
                vol += d;
            }
            in_set[v] = !in_set[v];
            report.audited += 1;
            let s = slack(cut, vol);
            if s < report.min_slack {
                report.min_slack = s;
                best_code = i ^ (i >> 1);
            }
        }
        report.worst_set = (0..n).filter(|&v| best_code >> v & 1 == 1).collect();
    } else {
        let (samples, seed) = match plan {
            SamplingPlan::Random { samples, seed } | SamplingPlan::Auto { samples, seed } => {
                (samples, seed)
            }
            SamplingPlan::Exhaustive => unreachable!(),
        };
        let mut rng = rng_from_seed(seed);
        let mut in_set = vec![false; n];
        for _ in 0..samples {
            let mut bits = 0u64;
            for (v, slot) in in_set.iter_mut().enumerate() {
                if v % 64 == 0 {
                    bits = rng.next_u64();
                }
                *slot = bits >> (v % 64) & 1 == 1;
            }
            let vol: u64 = (0..n).filter(|&v| in_set[v]).map(|v| g.degree(v) as u64).sum();
            let cut = g
                .edges()
                .iter()
                .filter(|&&(u, v)| in_set[u as usize] != in_set[v as usize])
                .count() as u64;
            report.audited += 1;
            let s = slack(cut, vol);
            if s < report.min_slack {
                report.min_slack = s;
                report.worst_set = (0..n).filter(|&v| in_set[v]).collect();
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_k4() {
        let r = discrepancy_audit(&Graph::complete(4), SamplingPlan::Exhaustive).unwrap();
        assert_eq!(r.audited, 16);
        // |S| = 2: cut 4 against (2/3) * 6 * 6 / 12 = 2, slack 2; |S| = 1:
        // cut 3 against (2/3) * 3 * 9 / 12 = 1.5. Empty and full sets give 0.
        assert!(r.min_slack.abs() < 1e-12);
        assert!(r.worst_set.is_empty());
    }

    #[test]
    fn random_plan_on_larger_graph() {
        let g = crate::generators::gen_gnp(40, 0.3, 2).unwrap().strip_isolated().0;
        let r = discrepancy_audit(&g, SamplingPlan::Auto { samples: 500, seed: 1 }).unwrap();
        assert_eq!(r.audited, 500);
        assert!(r.min_slack >= -1e-8);
        assert!(matches!(
            discrepancy_audit(&g, SamplingPlan::Exhaustive),
            Err(Error::TooLarge { .. })
        ));
    }
}
