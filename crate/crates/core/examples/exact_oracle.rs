//! Exact optimum of small graphs, restricted optima and robustness checks.

use modgraph::graph::{format_partition, Graph};
use modgraph::oracle::{
    exact_modularity, exact_modularity_k_ratio, resolution_limit_check, robustness_rewire_check,
    solve_dual, DEFAULT_ORACLE_CAP,
};

fn main() -> modgraph::Result<()> {
    let cap = DEFAULT_ORACLE_CAP;
    for (name, g) in [
        ("K5", Graph::complete(5)),
        ("4 disjoint edges", Graph::matching(4)),
        ("P4", Graph::path(4)),
        ("C9", Graph::cycle(9)),
    ] {
        let r = exact_modularity(&g, cap)?;
        println!("{name:>16}: q* = {} ({} partitions scanned)", r.q_star_exact, r.partitions_scanned);
    }

    let c6 = Graph::cycle(6);
    let r = exact_modularity(&c6, cap)?;
    println!("C6 has {} optimal partitions, the first:", r.optimal_partitions.len());
    print!("{}", format_partition(&r.optimal_partitions[0]));

    let (q2, q) = exact_modularity_k_ratio(&Graph::matching(3), 2, cap)?;
    println!("3 disjoint edges: best with 2 parts {q2}, overall {q}");

    let bridged = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])?;
    println!("two bridged triangles respect the resolution limit: {}", resolution_limit_check(&bridged, cap)?);

    let path_plus = Graph::new(6, [(0, 1), (1, 2), (2, 3)])?;
    let check = robustness_rewire_check(&Graph::matching(3), &path_plus, cap)?;
    println!(
        "moving one edge: |change| = {} < {} = bound: {}",
        check.delta_exact, check.bound_exact, check.ok
    );

    println!("dual root at c = 2: {:.6}", solve_dual(2.0)?);
    Ok(())
}
