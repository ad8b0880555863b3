use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use modgraph::experiments::{format_g12, run_experiment, Experiment, ExperimentConfig};
use modgraph::generators::{GeneratorSpec, Model};
use modgraph::graph::{format_partition, modularity_score, read_edge_list, read_partition};
use modgraph::oracle::{exact_modularity, exact_modularity_k_ratio, ratio_f64, DEFAULT_ORACLE_CAP};
use modgraph::spectral::{spectral_gap_extremal, spectral_summary_capped, ExtremalOptions, DEFAULT_DENSE_CAP};
use modgraph::{Error, Result};

#[derive(Parser)]
#[command(name = "modgraph", version, about = "Modularity of random graphs: experiments and tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Swap lower witness (and optional spectral upper witness) against np.
    GrowthRate(ExperimentArgs),
    /// Components partition below the giant-component threshold.
    Sparse(ExperimentArgs),
    /// Components partition at np = 1 + eps against its closed-form window.
    ThresholdWindow(ExperimentArgs),
    /// Planted-partition scores on the k-block model.
    Planted(ExperimentArgs),
    /// Planted model against its matched Erdos-Renyi graph.
    SbmDistinguish(ExperimentArgs),
    /// Tails of the exact optimum of small G(n, m).
    Concentration(ExperimentArgs),
    /// Isolated-edge counts and the bound they give.
    IsolatedEdges(ExperimentArgs),
    /// Exact maximum modularity of a small graph.
    Oracle(OracleArgs),
    /// Modularity of a given partition.
    Score(ScoreArgs),
    /// Write a random graph as an edge list.
    Generate(GenerateArgs),
    /// Spectral gap of the normalized Laplacian.
    Spectral(SpectralArgs),
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// CSV destination (overrides the config; stdout when neither is set).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    /// Replaces `base_seed`.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct OracleArgs {
    /// Edge list ("n m" header, then "u v" lines).
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    cap: usize,
    /// Also report the best score with at most this many parts.
    #[arg(long)]
    k: Option<usize>,
    /// Print every maximizer in partition format.
    #[arg(long)]
    maximizers: bool,
}

#[derive(Args)]
struct ScoreArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Partition file ("n k" header, then one part id per vertex).
    #[arg(long)]
    partition: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Gnp,
    Gnm,
    Planted,
}

#[derive(Args)]
struct GenerateArgs {
    /// JSON generator spec; flags below are ignored when given.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Edge-list destination (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Planted labels as a partition file.
    #[arg(long)]
    labels: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Dense,
    Extremal,
}

#[derive(Args)]
struct SpectralArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "dense")]
    method: Method,
    /// Write the eigenvalues, one per line (dense method only).
    #[arg(long)]
    eigenvalues: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
    cap: usize,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse().command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::GrowthRate(a) => experiment(Experiment::GrowthRate, a),
        Command::Sparse(a) => experiment(Experiment::Sparse, a),
        Command::ThresholdWindow(a) => experiment(Experiment::ThresholdWindow, a),
        Command::Planted(a) => experiment(Experiment::Planted, a),
        Command::SbmDistinguish(a) => experiment(Experiment::SbmDistinguish, a),
        Command::Concentration(a) => experiment(Experiment::Concentration, a),
        Command::IsolatedEdges(a) => experiment(Experiment::IsolatedEdges, a),
        Command::Oracle(a) => oracle(a),
        Command::Score(a) => score(a),
        Command::Generate(a) => generate(a),
        Command::Spectral(a) => spectral(a),
    }
}

fn experiment(which: Experiment, args: ExperimentArgs) -> Result<bool> {
    let mut cfg = ExperimentConfig::load(&args.config)?;
    match cfg.experiment {
        Some(e) if e != which => {
            return Err(Error::Config(format!("config is for `{e}`, not `{which}`")));
        }
        _ => cfg.experiment = Some(which),
    }
    if let Some(seed) = args.seed {
        cfg.base_seed = seed;
    }
    let report = run_experiment(&cfg, args.threads)?;
    let out = args.out.or_else(|| cfg.output.as_ref().map(PathBuf::from));
    // Keep stdout clean for the CSV when it goes there.
    let mut log: Box<dyn Write> = match &out {
        Some(path) => {
            report.write_csv(path)?;
            Box::new(io::stdout())
        }
        None => {
            report.table.write(io::stdout().lock())?;
            Box::new(io::stderr())
        }
    };
    for (key, value) in &report.summary {
        writeln!(log, "{key} = {}", format_g12(*value))?;
    }
    for check in &report.checks {
        writeln!(log, "{check}")?;
    }
    Ok(report.passed())
}

fn oracle(args: OracleArgs) -> Result<bool> {
    let g = read_edge_list(&args.graph)?;
    let res = exact_modularity(&g, args.cap)?;
    println!("q* = {} ({})", res.q_star_exact, format_g12(res.q_star));
    println!("partitions scanned: {}", res.partitions_scanned);
    if let Some(k) = args.k {
        let (qk, _) = exact_modularity_k_ratio(&g, k, args.cap)?;
        println!("q_<={k} = {qk} ({})", format_g12(ratio_f64(qk)));
    }
    if args.maximizers {
        println!("maximizers: {}", res.optimal_partitions.len());
        for p in &res.optimal_partitions {
            print!("{}", format_partition(p));
        }
    }
    Ok(true)
}

fn score(args: ScoreArgs) -> Result<bool> {
    let g = read_edge_list(&args.graph)?;
    let p = read_partition(&args.partition)?;
    let b = modularity_score(&g, &p)?;
    println!("q = {} ({})", b.exact(), format_g12(b.q));
    println!("edge contribution = {}", format_g12(b.edge_contribution));
    println!("degree tax = {}", format_g12(b.degree_tax));
    Ok(true)
}

fn generate(args: GenerateArgs) -> Result<bool> {
    let mut spec = match &args.config {
        Some(path) => GeneratorSpec::from_json(&fs::read_to_string(path)?)?,
        None => {
            let model = match args.model {
                Some(ModelArg::Gnp) => Model::Gnp,
                Some(ModelArg::Gnm) => Model::Gnm,
                Some(ModelArg::Planted) => Model::Planted,
                None => return Err(Error::Config("give --config or --model".into())),
            };
            let n = args.n.ok_or_else(|| Error::Config("--n is required".into()))?;
            GeneratorSpec {
                model,
                n,
                p: args.p,
                m: args.m,
                alpha: args.alpha,
                beta: args.beta,
                k: args.k,
                seed: 0,
            }
        }
    };
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    let lg = spec.generate_labeled()?;
    let text = modgraph::graph::format_edge_list(&lg.graph);
    match &args.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    if let Some(path) = &args.labels {
        if spec.model != Model::Planted {
            return Err(Error::Config("--labels needs the planted model".into()));
        }
        let p = modgraph::graph::Partition::from_labels(&lg.labels)?;
        fs::write(path, format_partition(&p))?;
    }
    Ok(true)
}

fn spectral(args: SpectralArgs) -> Result<bool> {
    let g = read_edge_list(&args.graph)?;
    match args.method {
        Method::Dense => {
            let s = spectral_summary_capped(&g, args.cap)?;
            println!("gap = {}", format_g12(s.gap));
            println!("connected = {}", s.connected);
            if let Some(path) = &args.eigenvalues {
                fs::write(path, s.eigenvalues_csv())?;
            }
        }
        Method::Extremal => {
            if args.eigenvalues.is_some() {
                return Err(Error::Config("--eigenvalues needs --method dense".into()));
            }
            let opts = ExtremalOptions { tol: args.tol, max_iter: args.max_iter, seed: args.seed };
            let r = spectral_gap_extremal(&g, &opts)?;
            println!("gap = {}", format_g12(r.gap));
            println!("iterations = {}", r.iterations);
            println!("residual = {}", format_g12(r.residual));
        }
    }
    Ok(true)
}
