//! The `hellrank` command line.
//!
//! [`run`] parses arguments, computes, and writes the artifact to `--output`
//! or stdout. Output is assembled in memory and written once, so a failed run
//! never leaves a partial file behind.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::baselines::{
    bipartite_betweenness, bipartite_closeness, bipartite_degree, eigenvector_centrality, latapy_cc, opsahl_cc_for,
    pagerank, projected_centrality, PageRankConfig, ProjectedMetric,
};
use crate::datasets::load_builtin;
use crate::error::{Error, Result};
use crate::export;
use crate::graph::{BipartiteGraph, Delimiter, EdgeListOptions, GraphBuilder, Side};
use crate::hellinger::{distance_matrix_with, hellrank_with, threshold_graph, DistanceMode, DistanceOptions};
use crate::null_model::{
    expected_distance_moments_with_cutoff, monte_carlo_distance, similarity_threshold, NullModelParams,
};
use crate::rank_eval::{kendall_tau_with, spearman_rho, sweep_k, top_k_vector, RankVector, TauVariant};
use crate::scores::CentralityScores;

const EIGEN_TOLERANCE: f64 = 1e-10;
const EIGEN_MAX_ITERATIONS: usize = 10_000;

#[derive(Parser, Debug)]
#[command(name = "hellrank", version, about = "Hellinger-distance centrality for bipartite networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-node centrality table.
    Scores(ScoresArgs),
    /// Pairwise Hellinger distance matrix of one side.
    Distances(DistancesArgs),
    /// Kendall tau and top-k Spearman rho between two metrics.
    Correlate(CorrelateArgs),
    /// Top-k Spearman rho for k = 1..kmax.
    SweepK(SweepArgs),
    /// Graph linking same-side nodes closer than a threshold.
    ThresholdGraph(ThresholdArgs),
    /// Distance moments and similarity threshold under the random-graph model.
    NullModel(NullModelArgs),
    /// One-mode projection of a side.
    Project(ProjectArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Edge list: `left right [weight]` per line.
    #[arg(long, required_unless_present = "dataset", conflicts_with = "dataset")]
    input: Option<PathBuf>,
    /// Embedded dataset (davis).
    #[arg(long)]
    dataset: Option<String>,
    /// Read a third weight column and use weighted neighbor-degree vectors.
    #[arg(long)]
    weighted: bool,
    /// Node list of `left|right label` lines, loaded first to fix node order and keep isolated nodes.
    #[arg(long)]
    nodes: Option<PathBuf>,
    /// Field separator (default: whitespace).
    #[arg(long)]
    delimiter: Option<char>,
}

#[derive(Args, Debug)]
struct SideModeArgs {
    #[arg(long, default_value = "left")]
    side: Side,
    #[arg(long, default_value = "normalized")]
    mode: DistanceMode,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file (default: stdout).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Metric {
    #[value(name = "hellrank")]
    HellRank,
    Degree2,
    Closeness2,
    Betweenness2,
    #[value(name = "pagerank")]
    PageRank,
    Eigenvector,
    Latapy,
    Opsahl,
    Degree1,
    Closeness1,
    Betweenness1,
    All,
}

const PER_NODE_METRICS: [Metric; 10] = [
    Metric::HellRank,
    Metric::Degree2,
    Metric::Closeness2,
    Metric::Betweenness2,
    Metric::PageRank,
    Metric::Eigenvector,
    Metric::Latapy,
    Metric::Degree1,
    Metric::Closeness1,
    Metric::Betweenness1,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Normalize {
    None,
    Max,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Tau {
    A,
    B,
}

#[derive(Args, Debug)]
struct MetricArgs {
    #[arg(long, value_enum, default_value = "hellrank")]
    metric: Metric,
    #[arg(long, default_value_t = 0.85)]
    damping: f64,
}

#[derive(Args, Debug)]
struct ScoresArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    side_mode: SideModeArgs,
    #[command(flatten)]
    metric: MetricArgs,
    #[arg(long, value_enum, default_value = "max")]
    normalize: Normalize,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct DistancesArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    side_mode: SideModeArgs,
    /// Allow matrices above the default size cap.
    #[arg(long)]
    force: bool,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct CorrelateArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    side_mode: SideModeArgs,
    #[command(flatten)]
    metric: MetricArgs,
    /// Metric to compare against, or `all`.
    #[arg(long, value_enum, default_value = "all")]
    against: Metric,
    #[arg(long, default_value_t = 5)]
    topk: usize,
    #[arg(long, value_enum, default_value = "a")]
    tau: Tau,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    side_mode: SideModeArgs,
    #[command(flatten)]
    metric: MetricArgs,
    #[arg(long, value_enum, default_value = "degree2")]
    against: Metric,
    /// Largest k (default: side size − 1).
    #[arg(long)]
    kmax: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    side_mode: SideModeArgs,
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    #[arg(long)]
    force: bool,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_enum, default_value = "dot")]
    format: Format,
}

#[derive(Args, Debug)]
struct NullModelArgs {
    #[arg(long)]
    n1: usize,
    #[arg(long)]
    n2: usize,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1.0)]
    sigmas: f64,
    /// Truncate the series here instead of at n2.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Also estimate the moments by simulation with this many distances.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct ProjectArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "left")]
    side: Side,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

/// Runs the CLI on `args` (program name first) and returns the exit status:
/// 0 on success, 2 for usage errors, 1 for everything else.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli.command)),
            Err(e) => Err(Error::Config(format!("cannot start {n} worker threads: {e}"))),
        },
        None => execute(&cli.command),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("hellrank: {e}");
            match e {
                Error::Usage(_) => 2,
                _ => 1,
            }
        }
    }
}

fn execute(command: &Command) -> Result<()> {
    match command {
        Command::Scores(a) => scores(a),
        Command::Distances(a) => distances(a),
        Command::Correlate(a) => correlate(a),
        Command::SweepK(a) => sweep(a),
        Command::ThresholdGraph(a) => threshold(a),
        Command::NullModel(a) => null_model(a),
        Command::Project(a) => project(a),
    }
}

fn load_graph(args: &InputArgs) -> Result<BipartiteGraph> {
    if let Some(name) = &args.dataset {
        if args.nodes.is_some() || args.weighted {
            return Err(Error::Usage("--nodes and --weighted apply to --input files only".into()));
        }
        return load_builtin(name);
    }
    let path = args.input.as_ref().expect("clap enforces one input source");
    let mut options = if args.weighted {
        EdgeListOptions::weighted()
    } else {
        EdgeListOptions::default()
    };
    if let Some(c) = args.delimiter {
        options.delimiter = Delimiter::Char(c);
    }
    let mut builder = GraphBuilder::new(args.weighted);
    if let Some(nodes) = &args.nodes {
        builder.read_node_list(BufReader::new(File::open(nodes)?), &options)?;
    }
    builder.read_edge_list(BufReader::new(File::open(path)?), &options)?;
    Ok(builder.build())
}

fn emit(output: &OutputArgs, bytes: Vec<u8>) -> Result<()> {
    match &output.output {
        Some(path) => std::fs::write(path, bytes)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(&bytes)?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn reject_format(format: Format, allowed: &[Format]) -> Result<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "format {} is not available for this command",
            format.to_possible_value().map_or(String::new(), |v| v.get_name().to_owned())
        )))
    }
}

fn metric_name(metric: Metric) -> String {
    metric.to_possible_value().map_or(String::new(), |v| v.get_name().to_owned())
}

fn compute(
    graph: &BipartiteGraph,
    side: Side,
    mode: DistanceMode,
    args: &MetricArgs,
    metric: Metric,
) -> Result<CentralityScores> {
    Ok(match metric {
        Metric::HellRank => {
            let options = DistanceOptions::new(mode).weighted(graph.is_weighted());
            hellrank_with(graph, side, &options)?
        }
        Metric::Degree2 => bipartite_degree(graph)?.into_side(side),
        Metric::Closeness2 => bipartite_closeness(graph).into_side(side),
        Metric::Betweenness2 => bipartite_betweenness(graph).into_side(side),
        Metric::PageRank => {
            let config = PageRankConfig {
                damping: args.damping,
                ..PageRankConfig::default()
            };
            pagerank(graph, &config)?.into_side(side)
        }
        Metric::Eigenvector => eigenvector_centrality(graph, EIGEN_TOLERANCE, EIGEN_MAX_ITERATIONS)?
            .scores
            .into_side(side),
        Metric::Latapy => latapy_cc(graph, side),
        Metric::Degree1 => projected_centrality(graph, side, ProjectedMetric::Degree),
        Metric::Closeness1 => projected_centrality(graph, side, ProjectedMetric::Closeness),
        Metric::Betweenness1 => projected_centrality(graph, side, ProjectedMetric::Betweenness),
        Metric::Opsahl | Metric::All => {
            return Err(Error::Usage(format!("{} is not a per-node metric", metric_name(metric))))
        }
    })
}

fn max_normalized(scores: CentralityScores) -> CentralityScores {
    match scores.max_value() {
        Some(max) if max > 0.0 => scores.map_values(|v| v / max),
        _ => {
            let mut scores = scores;
            scores.warn("maximum score is not positive; left unnormalized".into());
            scores
        }
    }
}

fn expand(metric: Metric) -> Vec<Metric> {
    if metric == Metric::All {
        PER_NODE_METRICS.to_vec()
    } else {
        vec![metric]
    }
}

fn scores(a: &ScoresArgs) -> Result<()> {
    reject_format(a.format, &[Format::Csv, Format::Json])?;
    let graph = load_graph(&a.input)?;
    let (side, mode) = (a.side_mode.side, a.side_mode.mode);
    let mut out = Vec::new();
    if a.metric.metric == Metric::Opsahl {
        let c = opsahl_cc_for(&graph, side);
        match a.format {
            Format::Json => export::write_opsahl_json(&mut out, &c)?,
            _ => export::write_opsahl_csv(&mut out, &c)?,
        }
        return emit(&a.output, out);
    }
    let mut tables = Vec::new();
    for metric in expand(a.metric.metric) {
        let s = compute(&graph, side, mode, &a.metric, metric)?;
        tables.push(match a.normalize {
            Normalize::Max => max_normalized(s),
            Normalize::None => s,
        });
    }
    match (a.format, tables.as_slice()) {
        (Format::Json, [single]) => export::write_scores_json(&mut out, single)?,
        (Format::Json, _) => export::write_score_table_json(&mut out, &tables)?,
        (_, [single]) => export::write_scores_csv(&mut out, single)?,
        _ => export::write_score_table_csv(&mut out, &tables)?,
    }
    emit(&a.output, out)
}

fn distance_options(mode: DistanceMode, weighted: bool, force: bool) -> DistanceOptions {
    let options = DistanceOptions::new(mode).weighted(weighted);
    if force {
        options.matrix_cap(None)
    } else {
        options
    }
}

fn distances(a: &DistancesArgs) -> Result<()> {
    reject_format(a.format, &[Format::Csv, Format::Json])?;
    let graph = load_graph(&a.input)?;
    let options = distance_options(a.side_mode.mode, graph.is_weighted(), a.force);
    let matrix = distance_matrix_with(&graph, a.side_mode.side, &options)?;
    let mut out = Vec::new();
    match a.format {
        Format::Json => export::write_matrix_json(&mut out, &matrix)?,
        _ => export::write_matrix_csv(&mut out, &matrix)?,
    }
    emit(&a.output, out)
}

fn correlate(a: &CorrelateArgs) -> Result<()> {
    reject_format(a.format, &[Format::Csv, Format::Json])?;
    if a.metric.metric == Metric::All {
        return Err(Error::Usage("--metric must name a single metric; use --against all".into()));
    }
    let graph = load_graph(&a.input)?;
    let (side, mode) = (a.side_mode.side, a.side_mode.mode);
    let base = compute(&graph, side, mode, &a.metric, a.metric.metric)?;
    let base_vector = RankVector::from_scores(&base);
    let variant = match a.tau {
        Tau::A => TauVariant::A,
        Tau::B => TauVariant::B,
    };
    let mut rows = Vec::new();
    for other in expand(a.against).into_iter().filter(|&m| m != a.metric.metric) {
        let scores = compute(&graph, side, mode, &a.metric, other)?;
        let tau = kendall_tau_with(&base_vector, &RankVector::from_scores(&scores), variant).ok();
        let rho = spearman_rho(&top_k_vector(&base, a.topk)?, &top_k_vector(&scores, a.topk)?).ok();
        rows.push((metric_name(other), tau, rho));
    }
    let metric = metric_name(a.metric.metric);
    let mut out = Vec::new();
    let fmt = |v: Option<f64>| v.map_or(String::new(), |x| x.to_string());
    match a.format {
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(other, tau, rho)| {
                    serde_json::json!({
                        "metric": metric, "against": other, "kendall_tau": tau,
                        "spearman_rho": rho, "k": a.topk,
                    })
                })
                .collect();
            serde_json::to_writer_pretty(&mut out, &items).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        _ => {
            writeln!(out, "metric,against,kendall_tau,spearman_rho,k")?;
            for (other, tau, rho) in &rows {
                writeln!(out, "{metric},{other},{},{},{}", fmt(*tau), fmt(*rho), a.topk)?;
            }
        }
    }
    emit(&a.output, out)
}

fn sweep(a: &SweepArgs) -> Result<()> {
    reject_format(a.format, &[Format::Csv, Format::Json])?;
    if a.metric.metric == Metric::All || a.against == Metric::All {
        return Err(Error::Usage("sweep-k compares two single metrics".into()));
    }
    let graph = load_graph(&a.input)?;
    let (side, mode) = (a.side_mode.side, a.side_mode.mode);
    let x = compute(&graph, side, mode, &a.metric, a.metric.metric)?;
    let y = compute(&graph, side, mode, &a.metric, a.against)?;
    let k_max = a.kmax.unwrap_or(x.len().saturating_sub(1));
    let series = sweep_k(&x, &y, k_max)?;
    let mut out = Vec::new();
    match a.format {
        Format::Json => export::write_sweep_json(&mut out, &series)?,
        _ => export::write_sweep_csv(&mut out, &series)?,
    }
    emit(&a.output, out)
}

fn threshold(a: &ThresholdArgs) -> Result<()> {
    if !(a.threshold >= 0.0) {
        return Err(Error::Usage(format!("--threshold must be nonnegative, got {}", a.threshold)));
    }
    let graph = load_graph(&a.input)?;
    let options = distance_options(a.side_mode.mode, graph.is_weighted(), a.force);
    let matrix = distance_matrix_with(&graph, a.side_mode.side, &options)?;
    let similar = threshold_graph(&matrix, a.threshold);
    let mut out = Vec::new();
    match a.format {
        Format::Dot => export::write_dot(&mut out, &similar, "similarity")?,
        Format::Json => export::write_edge_list_json(&mut out, &similar)?,
        Format::Csv => export::write_edge_list_csv(&mut out, &similar)?,
    }
    emit(&a.output, out)
}

fn null_model(a: &NullModelArgs) -> Result<()> {
    reject_format(a.format, &[Format::Json])?;
    let params = NullModelParams::new(a.n1, a.n2, a.p, a.k).map_err(|e| Error::Usage(e.to_string()))?;
    let moments = expected_distance_moments_with_cutoff(&params, a.cutoff.unwrap_or(a.n2))?;
    let threshold = if a.cutoff.is_none() {
        similarity_threshold(&params, a.sigmas).map_err(|e| Error::Usage(e.to_string()))?
    } else {
        if !(a.sigmas >= 0.0) {
            return Err(Error::Usage(format!("--sigmas must be nonnegative, got {}", a.sigmas)));
        }
        (moments.mean - a.sigmas * moments.std_dev()).max(0.0)
    };
    let mut out = Vec::new();
    export::write_moments_json(&mut out, &params, &moments, Some((a.sigmas, threshold)))?;
    if let Some(samples) = a.samples {
        let simulated = monte_carlo_distance(&params, samples, a.seed)?;
        let mut value: serde_json::Value = serde_json::from_slice(&out).map_err(io::Error::from)?;
        value["monte_carlo"] = serde_json::json!({
            "samples": samples,
            "seed": a.seed,
            "mean": simulated.mean,
            "second_moment": simulated.second_moment,
            "variance": simulated.variance,
            "standard_error": (simulated.variance / samples as f64).sqrt(),
        });
        out.clear();
        serde_json::to_writer_pretty(&mut out, &value).map_err(io::Error::from)?;
        writeln!(out)?;
    }
    emit(&a.output, out)
}

fn project(a: &ProjectArgs) -> Result<()> {
    let graph = load_graph(&a.input)?;
    let projection = graph.project(a.side);
    let mut out = Vec::new();
    match a.format {
        Format::Dot => export::write_dot(&mut out, &projection, "projection")?,
        Format::Json => export::write_edge_list_json(&mut out, &projection)?,
        Format::Csv => export::write_edge_list_csv(&mut out, &projection)?,
    }
    emit(&a.output, out)
}
