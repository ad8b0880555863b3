#![allow(dead_code)]

use modgraph::generators::gen_gnp;
use modgraph::graph::{connected_components, Graph, Partition};
use modgraph::rng::{below, derive_seed, rng_from_seed, uniform01};

/// Random graph on `n` vertices with a seed-dependent edge density.
pub fn random_graph(n: usize, seed: u64) -> Graph {
    let mut rng = rng_from_seed(derive_seed(seed, &[99]));
    let p = 0.15 + 0.7 * uniform01(&mut rng);
    gen_gnp(n, p, seed).unwrap()
}

/// Random connected graph with `n` vertices (retries with fresh seeds).
pub fn random_connected_graph(n: usize, seed: u64) -> Graph {
    (0..)
        .map(|i| random_graph(n, derive_seed(seed, &[i])))
        .find(|g| connected_components(g).k() == 1)
        .unwrap()
}

/// Random partition of `0..n` into at most `k` labelled parts.
pub fn random_partition(n: usize, k: usize, seed: u64) -> Partition {
    let mut rng = rng_from_seed(seed);
    let labels: Vec<u64> = (0..n).map(|_| below(&mut rng, k as u64)).collect();
    Partition::from_labels(&labels).unwrap()
}

/// Uniform random permutation of `0..n`.
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = rng_from_seed(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, below(&mut rng, i as u64 + 1) as usize);
    }
    perm
}
