//! A growth-rate sweep through the experiment harness, as the CLI runs it.

use modgraph::experiments::{run_experiment, ExperimentConfig};

fn main() -> modgraph::Result<()> {
    let cfg = ExperimentConfig::from_json(
        r#"{
            "experiment": "growth-rate",
            "grid": {"n": [20000], "np": [16, 32, 64, 128, 256]},
            "replicates": 5,
            "base_seed": 2024,
            "assertions": {"slope_range": [-0.6, -0.4], "swap_constant": 0.15}
        }"#,
    )?;
    let report = run_experiment(&cfg, None)?;
    print!("{}", report.table.to_csv_string().lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("\n... {} rows", report.table.rows.len());
    for (key, value) in &report.summary {
        println!("{key} = {value:.5}");
    }
    for check in &report.checks {
        println!("{check}");
    }
    Ok(())
}
