mod common;

use modgraph::generators::gen_gnp;
use modgraph::graph::Graph;
use modgraph::oracle::exact_modularity;
use modgraph::spectral::{
    discrepancy_audit, estimate_gap, laplacian_eigen, normalized_laplacian, spectral_summary,
    ExtremalOptions, SamplingPlan,
};

fn connected(n: usize, seed: u64) -> Graph {
    common::random_connected_graph(n, seed)
}

#[test]
fn eigenpairs_have_small_residuals() {
    for seed in 0..40u64 {
        let g = connected(5 + seed as usize % 30, seed);
        let n = g.n();
        let l = normalized_laplacian(&g).unwrap();
        let eig = laplacian_eigen(&g, 1000).unwrap();
        let trace: f64 = eig.values.iter().sum();
        assert!((trace - n as f64).abs() < 1e-9 * n as f64);
        assert!(eig.values[0].abs() < 1e-9);
        assert!(*eig.values.last().unwrap() <= 2.0 + 1e-9);
        for (j, &lambda) in eig.values.iter().enumerate() {
            let v = eig.vector(j).unwrap();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let res = (0..n)
                .map(|i| {
                    let lv: f64 = (0..n).map(|c| l[i * n + c] * v[c]).sum();
                    (lv - lambda * v[i]).powi(2)
                })
                .sum::<f64>()
                .sqrt();
            assert!(res <= 1e-7 * norm, "seed {seed} j {j}: {res}");
        }
    }
}

#[test]
fn known_spectra() {
    // K_n: 0 once, then n/(n-1).
    let s = spectral_summary(&Graph::complete(6)).unwrap();
    assert!(s.eigenvalues[1..].iter().all(|&l| (l - 1.2).abs() < 1e-12));
    assert!((s.gap - 0.2).abs() < 1e-12);
    // C_n: 1 - cos(2 pi j / n).
    let n = 9;
    let s = spectral_summary(&Graph::cycle(n)).unwrap();
    let mut expect: Vec<f64> = (0..n)
        .map(|j| 1.0 - (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos())
        .collect();
    expect.sort_by(f64::total_cmp);
    for (a, b) in s.eigenvalues.iter().zip(&expect) {
        assert!((a - b).abs() < 1e-12);
    }
    let s = spectral_summary(&Graph::matching(3)).unwrap();
    assert!(!s.connected);
    assert_eq!(s.gap, 1.0);
}

#[test]
fn gap_dominates_the_exact_optimum() {
    for seed in 0..60u64 {
        let g = connected(4 + seed as usize % 7, seed);
        let gap = spectral_summary(&g).unwrap().gap;
        let q = exact_modularity(&g, 10).unwrap().q_star;
        assert!(q <= gap + 1e-8, "seed {seed}: {q} > {gap}");
    }
}

#[test]
fn discrepancy_slack_is_nonnegative() {
    for seed in 0..30u64 {
        let g = connected(4 + seed as usize % 12, seed);
        let r = discrepancy_audit(&g, SamplingPlan::Exhaustive).unwrap();
        assert!(r.min_slack >= -1e-8, "seed {seed}: {}", r.min_slack);
        assert_eq!(r.audited, 1 << g.n());
    }
    let g = connected(60, 7);
    let r = discrepancy_audit(&g, SamplingPlan::Auto { samples: 5000, seed: 1 }).unwrap();
    assert!(r.min_slack >= -1e-8);
    assert!(discrepancy_audit(&g, SamplingPlan::Exhaustive).is_err());
}

#[test]
fn extremal_matches_dense() {
    for seed in 0..10u64 {
        let g = gen_gnp(300, 0.05, seed).unwrap().strip_isolated().0;
        let dense = spectral_summary(&g).unwrap().gap;
        let opts = ExtremalOptions { tol: 1e-8, max_iter: 20_000, seed };
        let r = estimate_gap(&g, &opts).unwrap();
        assert!(r.converged);
        assert!((r.gap - dense).abs() < 1e-6, "seed {seed}: {} vs {dense}", r.gap);
    }
}

#[test]
fn spectral_input_errors() {
    assert!(spectral_summary(&Graph::empty(4)).is_err());
    let g = Graph::new(4, [(0, 1), (1, 2)]).unwrap();
    assert!(spectral_summary(&g).is_err());
    assert!(estimate_gap(&g, &ExtremalOptions::default()).is_err());
}
