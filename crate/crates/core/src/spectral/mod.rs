//! Spectrum of the normalized Laplacian `L = I - D^{-1/2} A D^{-1/2}` and
//! what it says about modularity.
//!
//! The spectral gap used throughout is `max(|1 - λ1|, |λ_{n-1} - 1|)` where
//! `0 = λ0 <= λ1 <= ... <= λ_{n-1} <= 2`. Every partition into `k` parts
//! scores at most `gap * (1 - 1/k)`, and every vertex set `S` satisfies
//! `e(S, S̄) >= (1 - gap) vol(S) vol(S̄) / vol(G)`.
//!
//! All operations here require a graph without isolated vertices; use
//! [`Graph::strip_isolated`] first when needed.

mod discrepancy;
mod eigen;
mod extremal;
mod prune;

pub use discrepancy::{discrepancy_audit, DiscrepancyReport, SamplingPlan};
pub use eigen::{symmetric_eigen, SymmetricEigen};
pub use extremal::{estimate_gap, spectral_gap_extremal, ExtremalGap, ExtremalOptions};
pub use prune::{prune, PruneResult};

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph, Partition};

/// Largest graph accepted by the dense solver unless overridden.
pub const DEFAULT_DENSE_CAP: usize = 4000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralSummary {
    /// Ascending eigenvalues of the normalized Laplacian.
    pub eigenvalues: Vec<f64>,
    pub gap: f64,
    /// False when the graph has more than one component (then `gap = 1`).
    pub connected: bool,
}

impl SpectralSummary {
    /// One eigenvalue per line, 17 significant digits.
    pub fn eigenvalues_csv(&self) -> String {
        let mut out = String::new();
        for l in &self.eigenvalues {
            writeln!(out, "{l:.16e}").unwrap();
        }
        out
    }
}

fn check_spectral_input(g: &Graph, cap: usize) -> Result<()> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    if g.n() > cap {
        return Err(Error::TooLarge { size: g.n(), cap });
    }
    Ok(())
}

/// Dense row-major normalized Laplacian.
pub fn normalized_laplacian(g: &Graph) -> Result<Vec<f64>> {
    check_spectral_input(g, usize::MAX)?;
    let n = g.n();
    let inv_sqrt: Vec<f64> = (0..n).map(|v| 1.0 / (g.degree(v) as f64).sqrt()).collect();
    let mut l = vec![0.0; n * n];
    for v in 0..n {
        l[v * n + v] = 1.0;
    }
    for &(u, v) in g.edges() {
        let (u, v) = (u as usize, v as usize);
        let w = -inv_sqrt[u] * inv_sqrt[v];
        l[u * n + v] = w;
        l[v * n + u] = w;
    }
    Ok(l)
}

/// Full eigendecomposition of the normalized Laplacian (eigenvectors
/// included), for graphs up to `cap` vertices.
pub fn laplacian_eigen(g: &Graph, cap: usize) -> Result<SymmetricEigen> {
    check_spectral_input(g, cap)?;
    symmetric_eigen(&normalized_laplacian(g)?, g.n(), true)
}

pub fn spectral_summary(g: &Graph) -> Result<SpectralSummary> {
    spectral_summary_capped(g, DEFAULT_DENSE_CAP)
}

pub fn spectral_summary_capped(g: &Graph, cap: usize) -> Result<SpectralSummary> {
    check_spectral_input(g, cap)?;
    let eig = symmetric_eigen(&normalized_laplacian(g)?, g.n(), false)?;
    let eigenvalues = eig.values;
    let gap = gap_from_spectrum(&eigenvalues);
    Ok(SpectralSummary {
        eigenvalues,
        gap,
        connected: connected_components(g).k() == 1,
    })
}

fn gap_from_spectrum(ev: &[f64]) -> f64 {
    let n = ev.len();
    (1.0 - ev[1]).abs().max((ev[n - 1] - 1.0).abs())
}

/// `gap * (1 - 1/k)` for the `k` parts of `p`: an upper bound on the score of
/// `p`.
pub fn spectral_modularity_bound(g: &Graph, p: &Partition) -> Result<f64> {
    if p.n() != g.n() {
        return Err(Error::InvalidPartition("partition does not match graph".into()));
    }
    let summary = spectral_summary(g)?;
    Ok(summary.gap * (1.0 - 1.0 / p.k() as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::modularity_score;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn single_edge() {
        let s = spectral_summary(&Graph::path(2)).unwrap();
        assert!(close(&s.eigenvalues, &[0.0, 2.0], 1e-12));
        assert!((s.gap - 1.0).abs() < 1e-12);
        assert!(s.connected);
    }

    #[test]
    fn complete_graph_k4() {
        let s = spectral_summary(&Graph::complete(4)).unwrap();
        let t = 4.0 / 3.0;
        assert!(close(&s.eigenvalues, &[0.0, t, t, t], 1e-12));
        assert!((s.gap - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn four_cycle() {
        let s = spectral_summary(&Graph::cycle(4)).unwrap();
        assert!(close(&s.eigenvalues, &[0.0, 1.0, 1.0, 2.0], 1e-12));
        assert!((s.gap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disconnected_graph_has_unit_gap() {
        let s = spectral_summary(&Graph::matching(2)).unwrap();
        assert!(!s.connected);
        assert!((s.gap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn input_errors() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(spectral_summary(&g), Err(Error::IsolatedVertex(2)));
        assert_eq!(spectral_summary(&Graph::empty(2)), Err(Error::EmptyGraph));
        assert_eq!(
            spectral_summary_capped(&Graph::cycle(5), 4),
            Err(Error::TooLarge { size: 5, cap: 4 })
        );
    }

    #[test]
    fn bound_examples() {
        let k4 = Graph::complete(4);
        let half = Partition::from_parts(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let b = spectral_modularity_bound(&k4, &half).unwrap();
        assert!((b - 1.0 / 6.0).abs() < 1e-12);
        assert!(modularity_score(&k4, &half).unwrap().q <= b);
        assert_eq!(spectral_modularity_bound(&k4, &Partition::trivial(4)).unwrap(), 0.0);

        let p4 = Graph::path(4);
        let halves = Partition::from_parts(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let q = modularity_score(&p4, &halves).unwrap().q;
        let b = spectral_modularity_bound(&p4, &halves).unwrap();
        assert!(q <= b + 1e-8, "{q} > {b}");
    }

    #[test]
    fn path_p4_spectrum_matches_closed_form() {
        // Normalized Laplacian of the path on n vertices has eigenvalues
        // 1 - cos(pi j / (n - 1)), j = 0..n-1.
        let s = spectral_summary(&Graph::path(4)).unwrap();
        let want: Vec<f64> = (0..4)
            .map(|j| 1.0 - (std::f64::consts::PI * j as f64 / 3.0).cos())
            .collect();
        assert!(close(&s.eigenvalues, &want, 1e-12));
    }

    #[test]
    fn csv_has_one_line_per_eigenvalue() {
        let s = spectral_summary(&Graph::complete(3)).unwrap();
        assert_eq!(s.eigenvalues_csv().lines().count(), 3);
    }
}
