//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! `cargo test --test acceptance` runs everything; trailing numbers select
//! criteria (`cargo test --test acceptance -- 1 8 12`). Experiment CSVs land
//! in the cargo target tmp dir.

mod common;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use modgraph::experiments::{run_experiment, ExperimentConfig, Report};
use modgraph::generators::gen_gnp;
use modgraph::graph::{modularity_score, Graph};
use modgraph::heuristics::f_k;
use modgraph::oracle::{
    exact_modularity, exact_modularity_k_ratio, exact_q_star, optimal_connectivity_check,
    resolution_limit_check, robustness_delete_check, robustness_general_check, robustness_rewire_check,
};
use modgraph::rng::{below, derive_seed, rng_from_seed, Rng};
use modgraph::spectral::{discrepancy_audit, spectral_summary, SamplingPlan};
use num_rational::Ratio;

const CAP: usize = 10;

struct Outcome {
    passed: bool,
    detail: String,
    /// Extra lines shown under the verdict.
    notes: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, detail: detail.into(), notes: Vec::new() }
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria = [
        Criterion { id: 1, name: "oracle fixtures", budget: secs(5), run: oracle_fixtures },
        Criterion { id: 2, name: "spectral soundness", budget: secs(120), run: spectral_soundness },
        Criterion { id: 3, name: "robustness suites", budget: secs(300), run: robustness_suites },
        Criterion { id: 4, name: "growth rate", budget: secs(900), run: growth_rate },
        Criterion { id: 5, name: "upper witness", budget: secs(1200), run: upper_witness },
        Criterion { id: 6, name: "sparse phase", budget: secs(60), run: sparse_phase },
        Criterion { id: 7, name: "threshold window", budget: secs(300), run: threshold_window },
        Criterion { id: 8, name: "table of f(k)", budget: secs(1), run: f_table },
        Criterion { id: 9, name: "planted scores", budget: secs(300), run: planted_scores },
        Criterion { id: 10, name: "concentration", budget: secs(600), run: concentration },
        Criterion { id: 11, name: "structure properties", budget: secs(600), run: structure_properties },
        Criterion { id: 12, name: "at most k parts", budget: secs(300), run: at_most_k },
    ];
    let mut unexpected = 0;
    for c in criteria.iter().filter(|c| wanted.is_empty() || wanted.contains(&c.id)) {
        let start = Instant::now();
        let mut out = (c.run)();
        let took = start.elapsed();
        if took > c.budget {
            out.passed = false;
            out.notes.push(format!("runtime {:.1}s exceeds the {}s budget", took.as_secs_f64(), c.budget.as_secs()));
        }
        let verdict = if out.passed { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {} ({}): {} [{:.1}s / {}s]",
            c.id,
            c.name,
            out.detail,
            took.as_secs_f64(),
            c.budget.as_secs()
        );
        for note in &out.notes {
            println!("    {note}");
        }
        if !out.passed && !(c.id == 8 && f_table_failure_is_documented()) {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn fail(e: impl std::fmt::Display) -> Outcome {
    Outcome::new(false, format!("error: {e}"))
}

fn csv_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance")
}

fn run_config(tag: &str, json: &str, threads: Option<usize>) -> Result<Report, Outcome> {
    let cfg = ExperimentConfig::from_json(json).map_err(fail)?;
    let report = run_experiment(&cfg, threads).map_err(fail)?;
    let dir = csv_dir();
    std::fs::create_dir_all(&dir).map_err(fail)?;
    report.write_csv(dir.join(format!("{tag}.csv"))).map_err(fail)?;
    Ok(report)
}

/// Verdict from the report checks; failing checks become notes.
fn from_reports(reports: &[Report]) -> Outcome {
    let checks: Vec<_> = reports.iter().flat_map(|r| &r.checks).collect();
    let passed = checks.iter().filter(|c| c.passed).count();
    let mut out = Outcome::new(
        !checks.is_empty() && passed == checks.len(),
        format!("{passed}/{} checks passed", checks.len()),
    );
    out.notes = checks.iter().filter(|c| !c.passed).map(|c| c.to_string()).collect();
    out
}

fn experiments(configs: &[(&str, &str)], threads: Option<usize>) -> Outcome {
    let mut reports = Vec::new();
    for (tag, json) in configs {
        match run_config(tag, json, threads) {
            Ok(r) => reports.push(r),
            Err(o) => return o,
        }
    }
    let mut out = from_reports(&reports);
    for r in &reports {
        for (k, v) in &r.summary {
            if k.starts_with("slope") || k.starts_with("mean_q") || k.starts_with("upper_fraction") || k.starts_with("in_window") {
                out.detail.push_str(&format!("; {k} = {v:.6}"));
            }
        }
    }
    out
}

fn oracle_fixtures() -> Outcome {
    let mut cases: Vec<(String, Graph, Ratio<i64>)> = Vec::new();
    for n in 3..=6 {
        cases.push((format!("K{n}"), Graph::complete(n), Ratio::from_integer(0)));
    }
    for m in 1..=4 {
        cases.push((format!("{m} disjoint edges"), Graph::matching(m), Ratio::new(m as i64 - 1, m as i64)));
    }
    cases.push(("P4".into(), Graph::path(4), Ratio::new(1, 6)));
    cases.push(("edge + 2 isolated".into(), Graph::new(4, [(0, 1)]).unwrap(), Ratio::from_integer(0)));
    let mut out = Outcome::new(true, format!("{} fixtures exact", cases.len()));
    for (name, g, want) in &cases {
        match exact_q_star(g, CAP) {
            Ok(q) if q == *want => {}
            Ok(q) => {
                out.passed = false;
                out.notes.push(format!("{name}: q* = {q}, expected {want}"));
            }
            Err(e) => return fail(e),
        }
    }
    out
}

fn spectral_soundness() -> Outcome {
    let (mut worst_q, mut worst_part, mut worst_slack) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    for i in 0..200u64 {
        let seed = derive_seed(2, &[i]);
        let n = 3 + (i as usize % 8);
        let g = common::random_connected_graph(n, seed);
        let gap = match spectral_summary(&g) {
            Ok(s) => s.gap,
            Err(e) => return fail(e),
        };
        let q = match exact_modularity(&g, CAP) {
            Ok(r) => r.q_star,
            Err(e) => return fail(e),
        };
        worst_q = worst_q.min(gap + 1e-8 - q);
        for j in 0..50u64 {
            let k = 1 + (j as usize % n);
            let p = common::random_partition(n, k, derive_seed(seed, &[j]));
            let qa = modularity_score(&g, &p).unwrap().q;
            worst_part = worst_part.min(gap * (1.0 - 1.0 / p.k() as f64) + 1e-8 - qa);
        }
        match discrepancy_audit(&g, SamplingPlan::Exhaustive) {
            Ok(r) => worst_slack = worst_slack.min(r.min_slack),
            Err(e) => return fail(e),
        }
    }
    Outcome::new(
        worst_q >= 0.0 && worst_part >= 0.0 && worst_slack >= -1e-8,
        format!(
            "200 graphs; min margin q* {worst_q:.3e}, partitions {worst_part:.3e}, discrepancy slack {worst_slack:.3e}"
        ),
    )
}

fn shuffled<T: Clone>(items: &[T], rng: &mut Rng) -> Vec<T> {
    let mut v = items.to_vec();
    for i in (1..v.len()).rev() {
        v.swap(i, below(rng, i as u64 + 1) as usize);
    }
    v
}

fn non_edges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect()
}

fn edge_list(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|&(u, v)| (u as usize, v as usize)).collect()
}

/// Random graph with at least one edge and one non-edge.
fn trial_graph(i: u64, tag: u64) -> Graph {
    (0..)
        .map(|j| {
            let seed = derive_seed(3, &[tag, i, j]);
            common::random_graph(4 + (seed % 5) as usize, seed)
        })
        .find(|g| g.m() > 0 && !non_edges(g).is_empty())
        .unwrap()
}

fn robustness_suites() -> Outcome {
    let trials = 500u64;
    let mut failures = Vec::new();
    for i in 0..trials {
        // Deleting a random non-empty edge subset.
        let g = trial_graph(i, 0);
        let mut rng = rng_from_seed(derive_seed(30, &[i]));
        let edges = shuffled(&edge_list(&g), &mut rng);
        let r = 1 + below(&mut rng, edges.len() as u64) as usize;
        match robustness_delete_check(&g, &edges[..r], CAP) {
            Ok(c) if c.ok => {}
            Ok(c) => failures.push(format!("delete trial {i}: {} >= {}", c.delta_exact, c.bound_exact)),
            Err(e) => return fail(e),
        }

        // Moving r edges onto non-edges.
        let g = trial_graph(i, 1);
        let edges = shuffled(&edge_list(&g), &mut rng);
        let free = shuffled(&non_edges(&g), &mut rng);
        let r = 1 + below(&mut rng, edges.len().min(free.len()) as u64) as usize;
        let mut e2: Vec<_> = edges[r..].to_vec();
        e2.extend_from_slice(&free[..r]);
        let g2 = Graph::new(g.n(), e2).unwrap();
        match robustness_rewire_check(&g, &g2, CAP) {
            Ok(c) if c.ok => {}
            Ok(c) => failures.push(format!("rewire trial {i}: {} >= {}", c.delta_exact, c.bound_exact)),
            Err(e) => return fail(e),
        }

        // Removing r edges and adding at most r new ones.
        let g = trial_graph(i, 2);
        let edges = shuffled(&edge_list(&g), &mut rng);
        let free = shuffled(&non_edges(&g), &mut rng);
        let r = 1 + below(&mut rng, edges.len() as u64) as usize;
        let s = below(&mut rng, r.min(free.len()) as u64 + 1) as usize;
        let mut e2: Vec<_> = edges[r..].to_vec();
        e2.extend_from_slice(&free[..s]);
        let g2 = Graph::new(g.n(), e2).unwrap();
        match robustness_general_check(&g, &g2, CAP) {
            Ok(c) if c.ok => {}
            Ok(c) => failures.push(format!("general trial {i}: {} >= {}", c.delta_exact, c.bound_exact)),
            Err(e) => return fail(e),
        }
    }
    let fixture = robustness_rewire_check(
        &Graph::matching(3),
        &Graph::new(6, [(0, 1), (1, 2), (2, 3)]).unwrap(),
        CAP,
    );
    let fixture_ok = match &fixture {
        Ok(c) => c.ok && c.delta_exact == Ratio::new(1, 2) && c.bound_exact == Ratio::new(2, 3),
        Err(_) => false,
    };
    let mut out = Outcome::new(
        failures.is_empty() && fixture_ok,
        format!("{} trials, {} violations; fixture delta 1/2 < 2/3: {fixture_ok}", 3 * trials, failures.len()),
    );
    out.notes = failures;
    out
}

fn growth_rate() -> Outcome {
    experiments(
        &[(
            "growth_rate",
            r#"{"experiment":"growth-rate",
                "grid":{"n":[100000],"np":[16,32,64,128,256,512,1024]},
                "replicates":20,"base_seed":4,
                "assertions":{"slope_range":[-0.6,-0.4],"swap_constant":0.15,"swap_np_min":25}}"#,
        )],
        Some(1),
    )
}

fn upper_witness() -> Outcome {
    experiments(
        &[(
            "upper_witness",
            r#"{"experiment":"growth-rate",
                "grid":{"n":[5000],"np":[100]},
                "replicates":100,"base_seed":5,
                "solver":{"upper_witness":true,"spectral_tol":1e-4,"max_iter":10000},
                "assertions":{"upper_constant":6.0,"phi":0.95}}"#,
        )],
        None,
    )
}

fn sparse_phase() -> Outcome {
    experiments(
        &[(
            "sparse",
            r#"{"experiment":"sparse","grid":{"n":[100000],"np":[0.5]},"replicates":20,"base_seed":6,
                "assertions":{"min_q_cc":0.999,"phi":1.0}}"#,
        )],
        None,
    )
}

fn threshold_window() -> Outcome {
    experiments(
        &[(
            "threshold_window",
            r#"{"experiment":"threshold-window","grid":{"n":[1000000],"eps":[0.15,0.2,0.25]},
                "replicates":20,"base_seed":7,"assertions":{"phi":0.9,"window":true}}"#,
        )],
        None,
    )
}

/// Table entries as printed, k = 2..=10.
const F_TABLE: [f64; 9] = [0.5000, 0.5550, 0.6418, 0.6660, 0.6686, 0.6624, 0.6524, 0.6409, 0.6288];

fn f_table() -> Outcome {
    let mut out = Outcome::new(true, String::new());
    let mut worst: f64 = 0.0;
    for (i, &printed) in F_TABLE.iter().enumerate() {
        let k = i + 2;
        let f = f_k(k).unwrap();
        let diff = (f - printed).abs();
        worst = worst.max(diff);
        if diff > 5e-5 {
            out.passed = false;
            out.notes.push(format!("k={k}: closed form {f:.7} vs printed {printed:.4} (off by {diff:.2e})"));
        }
    }
    let matched = F_TABLE.len() - out.notes.len();
    out.detail = format!("{matched}/9 entries within 5e-5, worst {worst:.2e}");
    if !out.passed && f_table_failure_is_documented() {
        out.notes.push(
            "every printed entry equals the closed form truncated (not rounded) to 4 decimals; \
             the two misses are truncation error, not a formula mismatch"
                .into(),
        );
    }
    out
}

/// True when each printed entry is exactly the 4-decimal truncation of the
/// closed form.
fn f_table_failure_is_documented() -> bool {
    F_TABLE.iter().enumerate().all(|(i, &printed)| {
        let truncated = (f_k(i + 2).unwrap() * 1e4).floor();
        truncated == (printed * 1e4).round()
    })
}

fn planted_scores() -> Outcome {
    experiments(
        &[
            (
                "planted_k2",
                r#"{"experiment":"planted","grid":{"n":[100000],"c":[4],"k":[2]},"replicates":20,"base_seed":9,
                    "assertions":{"planted_tol":0.01}}"#,
            ),
            (
                "planted_k6",
                r#"{"experiment":"planted","grid":{"n":[100000],"c":[9],"k":[6]},"replicates":20,"base_seed":9,
                    "assertions":{"planted_tol":0.01}}"#,
            ),
        ],
        None,
    )
}

fn concentration() -> Outcome {
    experiments(
        &[(
            "concentration",
            r#"{"experiment":"concentration","grid":{"n":[8],"m":[10],"t":[0.2,0.4,0.6]},
                "replicates":2000,"base_seed":10}"#,
        )],
        None,
    )
}

fn structure_properties() -> Outcome {
    let mut failures = Vec::new();
    let mut done = 0u64;
    let mut i = 0u64;
    while done < 500 {
        let seed = derive_seed(11, &[i]);
        i += 1;
        let g = common::random_graph(3 + (seed % 6) as usize, seed);
        if g.m() == 0 {
            continue;
        }
        done += 1;
        let (h, _) = g.strip_isolated();
        match (resolution_limit_check(&g, CAP), optimal_connectivity_check(&h, CAP)) {
            (Ok(true), Ok(true)) => {}
            (Ok(a), Ok(b)) => failures.push(format!("seed {seed}: resolution {a}, connectivity {b}")),
            (Err(e), _) | (_, Err(e)) => return fail(e),
        }
    }
    let mut out = Outcome::new(failures.is_empty(), format!("{done} graphs, {} violations", failures.len()));
    out.notes = failures;
    out
}

fn at_most_k() -> Outcome {
    let mut graphs = Vec::new();
    for i in 0..500u64 {
        let seed = derive_seed(12, &[i]);
        let g = common::random_graph(3 + (seed % 7) as usize, seed);
        if g.m() > 0 {
            graphs.push((format!("random seed {seed}"), g));
        }
    }
    for (j, c) in [0.5, 1.0, 2.0, 3.0].into_iter().enumerate() {
        for i in 0..50u64 {
            let g = gen_gnp(10, c / 10.0, derive_seed(12, &[100 + j as u64, i])).unwrap();
            if g.m() > 0 {
                graphs.push((format!("G(10, {c}/10) #{i}"), g));
            }
        }
    }
    let mut failures = Vec::new();
    let mut pairs = 0;
    for (name, g) in &graphs {
        let active = g.n() - g.isolated_vertices().len();
        let q = match exact_q_star(g, CAP) {
            Ok(q) => q,
            Err(e) => return fail(e),
        };
        for k in 1..=active {
            let qk = match exact_modularity_k_ratio(g, k, CAP) {
                Ok((qk, _)) => qk,
                Err(e) => return fail(e),
            };
            pairs += 1;
            let floor = q * Ratio::new(k as i64 - 1, k as i64);
            if qk < floor || qk > q {
                failures.push(format!("{name}, k={k}: q_k = {qk}, q* = {q}"));
            }
        }
    }
    let mut out = Outcome::new(
        failures.is_empty(),
        format!("{} graphs, {pairs} (graph, k) pairs exact, {} violations", graphs.len(), failures.len()),
    );
    out.notes = failures;
    out
}
