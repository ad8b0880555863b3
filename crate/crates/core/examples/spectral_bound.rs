//! Spectral gaps, the bound they give on modularity, and the pruned upper
//! witness for a sparse random graph.

use modgraph::experiments::{upper_witness, SolverOptions};
use modgraph::generators::gen_gnp;
use modgraph::graph::Graph;
use modgraph::heuristics::swap_score;
use modgraph::spectral::{
    discrepancy_audit, spectral_gap_extremal, spectral_summary, ExtremalOptions, SamplingPlan,
};

fn main() -> modgraph::Result<()> {
    let k4 = spectral_summary(&Graph::complete(4))?;
    println!("K4 eigenvalues {:?}, gap {:.4}", k4.eigenvalues, k4.gap);

    let audit = discrepancy_audit(&Graph::cycle(8), SamplingPlan::Exhaustive)?;
    println!("C8 discrepancy audit: {} sets, min slack {:.3e}", audit.audited, audit.min_slack);

    let g = gen_gnp(300, 0.1, 5)?.strip_isolated().0;
    let dense = spectral_summary(&g)?.gap;
    let iter = spectral_gap_extremal(&g, &ExtremalOptions::default())?;
    println!("G(300, 0.1): dense gap {dense:.6}, power iteration {:.6} ({} steps)", iter.gap, iter.iterations);

    let (n, np) = (20_000, 50.0);
    let p = np / n as f64;
    let g = gen_gnp(n, p, 5)?;
    let solver = SolverOptions { spectral_tol: 1e-4, ..SolverOptions::default() };
    let w = upper_witness(&g, p, &solver, 1)?;
    println!(
        "G({n}, {np}/n): {:.4} <= q* <= {:.4}  (gap {:.4}, {} edges pruned, 4/sqrt(np) = {:.4})",
        swap_score(&g)?,
        w.upper,
        w.lambda_bar,
        w.removed_edges,
        4.0 / np.sqrt()
    );
    Ok(())
}
