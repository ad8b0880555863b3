//! Planted k-block partitions: f(k), parameter choice and the scores they
//! reach on the planted model.

use modgraph::experiments::{contiguity_warning, planted_parameters};
use modgraph::generators::gen_planted;
use modgraph::graph::modularity_score;
use modgraph::heuristics::{coarsen_to_k, f_k, planted_partition};

fn main() -> modgraph::Result<()> {
    print!("f(k):");
    for k in 2..=10 {
        print!(" {:.4}", f_k(k)?);
    }
    println!();

    let n = 50_000;
    for (c, k) in [(4.0, 2), (9.0, 3), (9.0, 6)] {
        let (alpha, beta) = planted_parameters(c, k, 0.999)?;
        let lg = gen_planted(n, alpha, beta, k, 11)?;
        let part = planted_partition(&lg, true)?;
        let q = modularity_score(&lg.graph, &part)?.q;
        println!(
            "c={c} k={k}: alpha={alpha:.3} beta={beta:.3} score {q:.4}, f(k)/sqrt(c) = {:.4}, outside contiguity: {}",
            f_k(k)? / c.sqrt(),
            contiguity_warning(alpha, beta, k)
        );
        if k > 2 {
            let merged = coarsen_to_k(&lg.graph, &part, 2)?;
            println!("    greedily merged to 2 parts: {:.4}", modularity_score(&lg.graph, &merged)?.q);
        }
    }
    Ok(())
}
