//! Scoring partitions: edge contribution, degree tax, exact fractions and
//! the components partition.

use modgraph::graph::{
    connected_components, degree_tax_bounds_check, modularity_score, parse_edge_list, Graph,
    Partition,
};

fn main() -> modgraph::Result<()> {
    let path = Graph::path(4);
    let halves = Partition::from_parts(4, &[vec![0, 1], vec![2, 3]])?;
    let b = modularity_score(&path, &halves)?;
    println!(
        "P4 split in halves: q_E = {:.4}, q_D = {:.4}, q = {} = {:.6}",
        b.edge_contribution,
        b.degree_tax,
        b.exact(),
        b.q
    );

    let square = Graph::cycle(4);
    let antipodal = Partition::from_parts(4, &[vec![0, 2], vec![1, 3]])?;
    println!("C4, antipodal pairs: q = {}", modularity_score(&square, &antipodal)?.exact());

    // Disjoint edges: the components partition scores 1 - 1/m.
    let text = "6 3\n0 1\n2 3\n4 5\n";
    let g = parse_edge_list(text)?;
    let cc = connected_components(&g);
    println!("3 disjoint edges, components: q = {}", modularity_score(&g, &cc)?.exact());
    println!("degree-tax bounds hold: {}", degree_tax_bounds_check(&g, &cc)?);

    println!("trivial partition always scores 0: {}", modularity_score(&g, &Partition::trivial(6))?.q);
    Ok(())
}
