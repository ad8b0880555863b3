//! Spectral gap of large sparse graphs without forming the Laplacian.
//!
//! With `M = D^{-1/2} A D^{-1/2}`, the Laplacian eigenvalues are `1 - μ` for
//! the eigenvalues `μ` of `M`, and the gap is the largest `|μ|` once the
//! top eigenvalue `μ = 1` is removed. Its eigenvector `D^{1/2} 1 / sqrt(2m)`
//! is known exactly, so it is projected out at every step and power
//! iteration runs on `M^2` (which makes `+μ` and `-μ` indistinguishable, as
//! the gap requires).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{rng_from_seed, uniform01};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExtremalOptions {
    /// Additive accuracy target for the gap.
    pub tol: f64,
    pub max_iter: usize,
    /// Seed of the random start vector.
    pub seed: u64,
}

impl Default for ExtremalOptions {
    fn default() -> Self {
        ExtremalOptions { tol: 1e-6, max_iter: 10_000, seed: 0x5eed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExtremalGap {
    pub gap: f64,
    pub iterations: usize,
    /// `||M^2 x - θ x||` at the final iterate.
    pub residual: f64,
    pub converged: bool,
}

/// Gap to within `opts.tol`; fails with [`Error::NoConvergence`] (carrying
/// the best estimate) if the iteration cap is reached first.
pub fn spectral_gap_extremal(g: &Graph, opts: &ExtremalOptions) -> Result<ExtremalGap> {
    let r = estimate_gap(g, opts)?;
    if !r.converged {
        return Err(Error::NoConvergence { estimate: r.gap, iterations: r.iterations });
    }
    Ok(r)
}

/// Like [`spectral_gap_extremal`] but reports non-convergence through the
/// `converged` flag instead of an error.
pub fn estimate_gap(g: &Graph, opts: &ExtremalOptions) -> Result<ExtremalGap> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let n = g.n();
    let inv_sqrt: Vec<f64> = (0..n).map(|v| 1.0 / (g.degree(v) as f64).sqrt()).collect();
    let two_m = 2.0 * g.m() as f64;
    let perron: Vec<f64> = (0..n).map(|v| (g.degree(v) as f64 / two_m).sqrt()).collect();

    let deflate = |x: &mut [f64]| {
        let dot: f64 = x.iter().zip(&perron).map(|(a, b)| a * b).sum();
        for (xi, pi) in x.iter_mut().zip(&perron) {
            *xi -= dot * pi;
        }
    };
    let mut scratch = vec![0.0; n];
    let mut apply = |x: &[f64], out: &mut [f64]| {
        for v in 0..n {
            scratch[v] = x[v] * inv_sqrt[v];
        }
        for v in 0..n {
            let s: f64 = g.neighbors(v).iter().map(|&w| scratch[w as usize]).sum();
            out[v] = s * inv_sqrt[v];
        }
        deflate(out);
    };

    let mut rng = rng_from_seed(opts.seed);
    let mut x: Vec<f64> = (0..n).map(|_| uniform01(&mut rng) - 0.5).collect();
    deflate(&mut x);
    let norm = l2(&x);
    if norm == 0.0 {
        // Only possible when n == 1, which an edge rules out.
        return Err(Error::NoConvergence { estimate: 0.0, iterations: 0 });
    }
    x.iter_mut().for_each(|v| *v /= norm);

    let mut y = vec![0.0; n];
    let mut z = vec![0.0; n];
    let mut best = ExtremalGap { gap: 0.0, iterations: 0, residual: f64::INFINITY, converged: false };
    for it in 1..=opts.max_iter {
        apply(&x, &mut y);
        let theta: f64 = y.iter().map(|v| v * v).sum();
        apply(&y, &mut z);
        let residual = z
            .iter()
            .zip(&x)
            .map(|(zi, xi)| (zi - theta * xi).powi(2))
            .sum::<f64>()
            .sqrt();
        let gap = theta.sqrt();
        best = ExtremalGap { gap, iterations: it, residual, converged: false };
        // An eigenvalue θ' of M^2 lies within `residual` of θ, hence
        // |sqrt θ' - sqrt θ| <= residual / sqrt θ.
        if residual <= opts.tol * gap || residual == 0.0 {
            best.converged = true;
            return Ok(best);
        }
        let zn = l2(&z);
        if zn == 0.0 {
            best.converged = true;
            return Ok(best);
        }
        for (xi, zi) in x.iter_mut().zip(&z) {
            *xi = zi / zn;
        }
    }
    Ok(best)
}

fn l2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}
