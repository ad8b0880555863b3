//! The Swap bisection against the plain odd/even bisection on G(n, p).

use modgraph::generators::gen_gnp;
use modgraph::graph::modularity_score;
use modgraph::heuristics::{odd_even_bisection, swap_bisection};

fn main() -> modgraph::Result<()> {
    let n = 20_000;
    println!("{:>6} {:>10} {:>10} {:>12}", "np", "q_oddeven", "q_swap", "q*sqrt(np)");
    for np in [16.0, 64.0, 256.0] {
        let g = gen_gnp(n, np / n as f64, 3)?;
        let base = modularity_score(&g, &odd_even_bisection(n)?)?.q;
        let (part, trace) = swap_bisection(&g)?;
        let q = modularity_score(&g, &part)?.q;
        println!("{np:>6} {base:>10.5} {q:>10.5} {:>12.4}", q * np.sqrt());
        println!(
            "       {} of {} pairs swapped, T* = {}, cut {} -> {}",
            trace.swap_count(),
            trace.swaps.len(),
            trace.t_star,
            trace.v0_v1_edges,
            trace.v0_v1_cut
        );
    }
    Ok(())
}
