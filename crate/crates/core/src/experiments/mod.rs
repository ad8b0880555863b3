//! Seeded Monte-Carlo sweeps over random-graph parameters.
//!
//! An [`ExperimentConfig`] names one experiment, a parameter grid and a
//! replicate count. Each (grid point, replicate) task gets the seed
//! `derive_seed(base_seed, [point, replicate])`, which is also the seed of
//! the task's main random graph, so any row can be regenerated on its own.
//! Tasks run on a rayon pool; results are collected in task order, so the
//! CSV is byte-identical for every thread count.
//!
//! Monte-Carlo claims are checked as majorities: a point passes when at
//! least a fraction `phi` of its replicates do. Thresholds are config
//! values and checks for unset thresholds are skipped. Exact properties
//! (the isolated-edge bound, witness ordering, concentration tails) are
//! always checked.

mod format;
mod runners;
pub mod stats;

pub use format::{format_g12, Cell, Table};
pub use runners::{
    contiguity_warning, isolated_edge_count, isolated_edge_bound_check, planted_parameters,
    upper_witness, window_bounds, UpperWitness,
};

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::derive_seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    GrowthRate,
    Sparse,
    ThresholdWindow,
    Planted,
    SbmDistinguish,
    Concentration,
    IsolatedEdges,
}

impl Experiment {
    pub const ALL: [Experiment; 7] = [
        Experiment::GrowthRate,
        Experiment::Sparse,
        Experiment::ThresholdWindow,
        Experiment::Planted,
        Experiment::SbmDistinguish,
        Experiment::Concentration,
        Experiment::IsolatedEdges,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::GrowthRate => "growth-rate",
            Experiment::Sparse => "sparse",
            Experiment::ThresholdWindow => "threshold-window",
            Experiment::Planted => "planted",
            Experiment::SbmDistinguish => "sbm-distinguish",
            Experiment::Concentration => "concentration",
            Experiment::IsolatedEdges => "isolated-edges",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment `{s}`")))
    }
}

/// Parameter lists. Which ones an experiment reads:
///
/// | experiment | lists |
/// |---|---|
/// | growth-rate | `n`, `np` |
/// | sparse | `n` and any of `np`, `p`, `m` |
/// | threshold-window | `n`, `eps` |
/// | planted | `n`, `k`, then `c` (and `x_factor`) or paired `alpha`/`beta` |
/// | sbm-distinguish | `n`, paired `alpha`/`beta` |
/// | concentration | `n`, `m`, `t` |
/// | isolated-edges | `n`, `c` |
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Grid {
    pub n: Vec<usize>,
    pub np: Vec<f64>,
    pub p: Vec<f64>,
    pub m: Vec<u64>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub k: Vec<usize>,
    pub eps: Vec<f64>,
    pub c: Vec<f64>,
    pub t: Vec<f64>,
    pub x_factor: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverOptions {
    /// Compute the pruned spectral upper witness (growth-rate,
    /// sbm-distinguish).
    pub upper_witness: bool,
    pub spectral_tol: f64,
    pub max_iter: usize,
    /// Pruned graphs up to this many vertices use the dense solver.
    pub dense_below: usize,
    pub prune_degree_factor: f64,
    pub prune_neighbor_cap: usize,
    pub oracle_cap: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            upper_witness: false,
            spectral_tol: 1e-6,
            max_iter: 10_000,
            dense_below: 400,
            prune_degree_factor: 0.5,
            prune_neighbor_cap: 100,
            oracle_cap: crate::oracle::DEFAULT_ORACLE_CAP,
        }
    }
}

/// Declared thresholds. Unset options disable their check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Assertions {
    /// Fraction of replicates that must satisfy a per-run property.
    pub phi: f64,
    /// growth-rate: allowed log-log slope of median `q_swap` against `np`.
    pub slope_range: Option<[f64; 2]>,
    /// growth-rate: median `q_swap >= swap_constant * sqrt((1-p)/np)`.
    pub swap_constant: Option<f64>,
    /// growth-rate: only points with `np >= swap_np_min` are held to
    /// `swap_constant`.
    pub swap_np_min: f64,
    /// growth-rate: converged upper witness `<= upper_constant / sqrt(np)`
    /// in a fraction `phi` of runs.
    pub upper_constant: Option<f64>,
    /// growth-rate: relative change of median `q_swap` allowed between
    /// different `n` at equal `np`.
    pub n_independence_tol: Option<f64>,
    /// sparse: `q_cc > min_q_cc` in a fraction `phi` of runs.
    pub min_q_cc: Option<f64>,
    /// threshold-window: `q_cc` inside the sandwich in a fraction `phi`.
    pub window: bool,
    /// planted: tolerance on the mean planted score.
    pub planted_tol: Option<f64>,
    /// planted: with `alpha == beta` the mean must lie within this many
    /// standard errors of 0.
    pub null_sigma: f64,
    /// sbm-distinguish: paired separation rate required when
    /// `(alpha-beta)^2/(alpha+beta) >= separation_min_ratio`.
    pub separation_rate: Option<f64>,
    pub separation_min_ratio: f64,
    /// sbm-distinguish: with `alpha == beta`, `|rate - 1/2| <= coin_flip_tol`.
    pub coin_flip_tol: Option<f64>,
    /// concentration: z of the Wilson allowance.
    pub wilson_z: f64,
    /// isolated-edges: relative tolerance of mean `X/m` against `e^{-2c}`.
    pub isolated_rel_tol: Option<f64>,
}

impl Default for Assertions {
    fn default() -> Self {
        Assertions {
            phi: 0.9,
            slope_range: None,
            swap_constant: None,
            swap_np_min: 25.0,
            upper_constant: None,
            n_independence_tol: None,
            min_q_cc: None,
            window: true,
            planted_tol: None,
            null_sigma: 3.0,
            separation_rate: None,
            separation_min_ratio: 4.0,
            coin_flip_tol: None,
            wilson_z: 3.0,
            isolated_rel_tol: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// May be omitted when the experiment is named on the command line.
    #[serde(default)]
    pub experiment: Option<Experiment>,
    pub grid: Grid,
    #[serde(default = "one")]
    pub replicates: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default)]
    pub output: Option<String>,
    #[serde(default)]
    pub solver: SolverOptions,
    #[serde(default)]
    pub assertions: Assertions,
    /// Adds a `wall_ms` column to per-replicate tables (output is then no
    /// longer reproducible byte for byte).
    #[serde(default)]
    pub include_timing: bool,
}

fn one() -> usize {
    1
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment, grid: Grid, replicates: usize, base_seed: u64) -> Self {
        ExperimentConfig {
            experiment: Some(experiment),
            grid,
            replicates,
            base_seed,
            output: None,
            solver: SolverOptions::default(),
            assertions: Assertions::default(),
            include_timing: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn experiment(&self) -> Result<Experiment> {
        self.experiment
            .ok_or_else(|| Error::Config("no experiment named".into()))
    }

    /// Checks shared by all experiments; each runner validates its own
    /// grid on top.
    pub fn validate(&self) -> Result<()> {
        self.experiment()?;
        if self.replicates == 0 {
            return Err(Error::Config("replicates must be at least 1".into()));
        }
        if self.grid.n.is_empty() {
            return Err(Error::Config("grid.n must not be empty".into()));
        }
        let a = &self.assertions;
        if !(a.phi > 0.0 && a.phi <= 1.0) {
            return Err(Error::Config("assertions.phi must lie in (0, 1]".into()));
        }
        if !(self.solver.spectral_tol > 0.0) {
            return Err(Error::Config("solver.spectral_tol must be positive".into()));
        }
        Ok(())
    }
}

/// One declared assertion and its outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

/// Everything an experiment produces.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub experiment: Experiment,
    pub table: Table,
    /// Derived quantities (fitted slopes, rates), in a fixed order.
    pub summary: Vec<(String, f64)>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn summary_value(&self, key: &str) -> Option<f64> {
        self.summary.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        self.table.write(std::fs::File::create(path)?)
    }
}

/// Runs the configured experiment on `threads` workers (rayon's default
/// when `None`).
pub fn run_experiment(cfg: &ExperimentConfig, threads: Option<usize>) -> Result<Report> {
    cfg.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder.build().map_err(|e| Error::Config(e.to_string()))?;
    let experiment = cfg.experiment()?;
    pool.install(|| match experiment {
        Experiment::GrowthRate => runners::growth_rate(cfg),
        Experiment::Sparse => runners::sparse(cfg),
        Experiment::ThresholdWindow => runners::threshold_window(cfg),
        Experiment::Planted => runners::planted(cfg),
        Experiment::SbmDistinguish => runners::sbm_distinguish(cfg),
        Experiment::Concentration => runners::concentration(cfg),
        Experiment::IsolatedEdges => runners::isolated_edges(cfg),
    })
}

/// Seed of replicate `rep` at grid point `point`.
pub fn task_seed(base_seed: u64, point: usize, rep: usize) -> u64 {
    derive_seed(base_seed, &[point as u64, rep as u64])
}

/// Runs `f(point, seed)` for every (point, replicate) pair in parallel.
/// Result `[i][r]` belongs to point `i`, replicate `r`.
fn replicate_map<P, R, F>(cfg: &ExperimentConfig, points: &[P], f: F) -> Result<Vec<Vec<R>>>
where
    P: Sync,
    R: Send,
    F: Fn(&P, u64) -> Result<R> + Sync,
{
    let reps = cfg.replicates;
    let flat: Vec<R> = (0..points.len() * reps)
        .into_par_iter()
        .map(|task| {
            let (i, r) = (task / reps, task % reps);
            f(&points[i], task_seed(cfg.base_seed, i, r))
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<Vec<R>> = Vec::with_capacity(points.len());
    let mut it = flat.into_iter();
    for _ in 0..points.len() {
        out.push(it.by_ref().take(reps).collect());
    }
    Ok(out)
}
