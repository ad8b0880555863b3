mod common;

use modgraph::generators::{gen_gnp, gen_planted};
use modgraph::graph::{connected_components, modularity_score, Graph, Partition};
use modgraph::heuristics::{
    coarsen_to_k, coarsen_with_trace, f_k, odd_even_bisection, planted_partition, swap_bisection,
    swap_bisection_with,
};

fn cut(g: &Graph, p: &Partition) -> usize {
    g.edges_across(|v| p.part_of(v) == 0)
}

/// `sum |T_i|` and `e(V0, V1)` recomputed from the definitions.
fn swap_statistics(g: &Graph) -> (i64, usize) {
    let k = g.n() / 6;
    let in_v1 = |v: usize| (4 * k..6 * k).contains(&v);
    let side_a1 = |v: usize| v % 2 == 0;
    let mut t_star = 0;
    for i in 0..2 * k {
        let (a, b) = (2 * i, 2 * i + 1);
        let e = |x: usize, want_a: bool| {
            g.neighbors(x).iter().filter(|&&w| in_v1(w as usize) && side_a1(w as usize) == want_a).count() as i64
        };
        let t = e(a, false) - e(a, true) + e(b, true) - e(b, false);
        t_star += t.abs();
    }
    let between = g
        .edges()
        .iter()
        .filter(|&&(u, v)| {
            let (u, v) = (u as usize, v as usize);
            (u < 4 * k && in_v1(v)) || (v < 4 * k && in_v1(u))
        })
        .count();
    (t_star, between)
}

#[test]
fn swap_identity_and_cut_on_random_graphs() {
    for seed in 0..500u64 {
        let n = 6 + (seed as usize % 60);
        let g = common::random_graph(n, seed);
        if g.m() == 0 {
            continue;
        }
        let base = odd_even_bisection(n).unwrap();
        let (p, trace) = swap_bisection(&g).unwrap();
        let (_, unswapped) = swap_bisection_with(&g, false).unwrap();
        let (t_star, between) = swap_statistics(&g);
        let k = n / 6;
        let crossing = g
            .edges()
            .iter()
            .filter(|&&(u, v)| {
                let (u, v) = (u as usize, v as usize);
                let v0v1 = (u < 4 * k && (4 * k..6 * k).contains(&v)) || (v < 4 * k && (4 * k..6 * k).contains(&u));
                v0v1 && p.part_of(u) != p.part_of(v)
            })
            .count() as i64;
        assert_eq!(2 * crossing, between as i64 - t_star, "seed {seed}");
        assert_eq!(trace.t_star as i64, t_star);
        assert_eq!(trace.v0_v1_cut as i64, crossing);
        assert!(trace.v0_v1_cut <= unswapped.v0_v1_cut, "seed {seed}");
        assert_eq!(trace.final_cut as usize, cut(&g, &p));
        let (off, _) = swap_bisection_with(&g, false).unwrap();
        assert_eq!(off, base);
        assert_eq!(p.sizes(), base.sizes());
    }
}

#[test]
fn swapped_volume_has_the_unswapped_distribution() {
    let (n, np, seeds) = (600usize, 8.0, 10_000u64);
    let (mut before, mut after) = (Vec::new(), Vec::new());
    for seed in 0..seeds {
        let g = gen_gnp(n, np / n as f64, seed).unwrap();
        let vol = |p: &Partition| g.volume((0..n).filter(|&v| p.part_of(v) == 0)) as f64;
        before.push(vol(&odd_even_bisection(n).unwrap()));
        after.push(vol(&swap_bisection(&g).unwrap().0));
    }
    let stats = |xs: &[f64]| {
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
        (m, v)
    };
    let s = seeds as f64;
    let (m0, v0) = stats(&before);
    let (m1, v1) = stats(&after);
    let se_mean = (v0 / s + v1 / s).sqrt();
    assert!((m0 - m1).abs() <= 3.0 * se_mean, "means {m0} vs {m1}");
    let se_var = (2.0 / (s - 1.0)).sqrt() * (v0 * v0 + v1 * v1).sqrt();
    assert!((v0 - v1).abs() <= 3.0 * se_var, "variances {v0} vs {v1}");
}

#[test]
fn planted_balance_never_changes_the_score() {
    for seed in 0..20 {
        let lg = gen_planted(3000, 3.0, 1.0, 3, seed).unwrap();
        let plain = planted_partition(&lg, false).unwrap();
        let balanced = planted_partition(&lg, true).unwrap();
        assert_eq!(
            modularity_score(&lg.graph, &plain).unwrap().exact(),
            modularity_score(&lg.graph, &balanced).unwrap().exact()
        );
        let sizes = balanced.sizes();
        let spread = sizes.iter().max().unwrap() - sizes.iter().min().unwrap();
        assert!(spread <= 1 || lg.graph.isolated_vertices().is_empty());
    }
}

#[test]
fn coarsening_part_counts_and_score_loss() {
    for seed in 0..50u64 {
        let g = common::random_graph(14, seed);
        if g.m() == 0 {
            continue;
        }
        let p = common::random_partition(14, 6, seed);
        let q = modularity_score(&g, &p).unwrap().q;
        for k in 1..=7 {
            let (c, merges) = coarsen_with_trace(&g, &p, k).unwrap();
            assert_eq!(c.k(), k.min(p.k()));
            let worst = merges.iter().map(|m| m.delta).fold(0.0f64, f64::min);
            let qc = modularity_score(&g, &c).unwrap().q;
            assert!(qc >= q + worst * merges.len() as f64 - 1e-12);
        }
    }
    let g = Graph::matching(2);
    let cc = connected_components(&g);
    assert_eq!(modularity_score(&g, &cc).unwrap().q, 0.5);
    let one = coarsen_to_k(&g, &cc, 1).unwrap();
    assert_eq!(one.k(), 1);
    assert_eq!(modularity_score(&g, &one).unwrap().q, 0.0);
    assert_eq!(coarsen_to_k(&g, &cc, 2).unwrap(), cc);
}

#[test]
fn f_values() {
    assert_eq!(f_k(2).unwrap(), 0.5);
    assert!((f_k(3).unwrap() - 0.5550).abs() < 5e-5);
    assert!((f_k(6).unwrap() - 0.6686).abs() < 5e-5);
    assert!(f_k(1).is_err());
}
