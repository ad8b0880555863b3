//! Seeded random graphs from code and from a JSON spec.

use modgraph::generators::{gen_gnm, gen_gnp, gen_planted, GeneratorSpec};
use modgraph::graph::format_edge_list;

fn main() -> modgraph::Result<()> {
    let g = gen_gnp(1000, 0.004, 7)?;
    println!("G(1000, 0.004): m = {} (expected {:.1})", g.m(), 0.004 * 999.0 * 500.0);

    let g = gen_gnm(1000, 2000, 7)?;
    println!("G(1000, 2000): m = {}", g.m());

    let lg = gen_planted(1000, 6.0, 2.0, 2, 7)?;
    let within = lg
        .graph
        .edges()
        .iter()
        .filter(|&&(u, v)| lg.labels[u as usize] == lg.labels[v as usize])
        .count();
    println!(
        "planted (alpha 6, beta 2): {} of {} edges inside a block (expected share 0.75)",
        within,
        lg.graph.m()
    );

    // The same graph again, from a spec that could live in a file.
    let spec = GeneratorSpec::from_json(r#"{"model":"PLANTED","n":1000,"alpha":6.0,"beta":2.0,"k":2,"seed":7}"#)?;
    assert_eq!(spec.generate()?, lg.graph);
    println!("spec round trip: {}", spec.to_json());

    let small = gen_gnp(6, 0.5, 1)?;
    print!("edge list of G(6, 0.5):\n{}", format_edge_list(&small));
    Ok(())
}
