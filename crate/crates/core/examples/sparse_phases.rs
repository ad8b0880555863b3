//! The components partition below and just above the giant-component
//! threshold, and the isolated-edge bound.

use modgraph::experiments::{isolated_edge_bound_check, isolated_edge_count, window_bounds};
use modgraph::generators::gen_gnp;
use modgraph::graph::{connected_components, modularity_score};
use modgraph::oracle::solve_dual;

fn main() -> modgraph::Result<()> {
    let n = 200_000;
    let g = gen_gnp(n, 0.5 / n as f64, 1)?;
    let q = modularity_score(&g, &connected_components(&g))?.q;
    println!("np = 0.5: q_cc = {q:.6}, deficit {:.2e}", 1.0 - q);

    for eps in [0.1, 0.2, 0.3] {
        let g = gen_gnp(n, (1.0 + eps) / n as f64, 1)?;
        let q = modularity_score(&g, &connected_components(&g))?.q;
        let (lo, hi) = window_bounds(eps);
        let c = 1.0 + eps;
        let x = solve_dual(c)?;
        println!(
            "np = {c}: {lo:.4} < q_cc = {q:.4} < {hi:.4}, limit value {:.4}",
            1.0 - (1.0 - x * x / (c * c)).powi(2)
        );
    }

    let c = 2.0;
    let g = gen_gnp(n, c / n as f64, 1)?;
    let x = isolated_edge_count(&g);
    println!(
        "np = 2: {x} isolated edges, X/m = {:.4} (e^-2c = {:.4}), bound holds: {:?}",
        x as f64 / g.m() as f64,
        (-2.0 * c).exp(),
        isolated_edge_bound_check(&g)
    );
    Ok(())
}
