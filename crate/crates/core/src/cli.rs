//! Command-line front end: `gen`, `run` and `bench`.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::bench::{self, BenchPlan, SourcePolicy, Topology};
use crate::generators::{self, PlanarConfig, RandomConfig};
use crate::graph::{self, Graph, Vertex};
use crate::solver::{self, ShortestPathResult, Variant};

#[derive(Debug, Parser)]
#[command(name = "sssp", version, about = "Single-source shortest paths with four priority-queue strategies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a planar or random graph file
    Gen(GenArgs),
    /// Solve one shortest-path query on a graph file
    Run(RunArgs),
    /// Time solver variants on generated graphs and write CSV
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TopologyArg {
    Planar,
    Random,
}

impl From<TopologyArg> for Topology {
    fn from(t: TopologyArg) -> Self {
        match t {
            TopologyArg::Planar => Topology::Planar,
            TopologyArg::Random => Topology::Random,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    Fixed,
    Random,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub topology: TopologyArg,
    #[arg(long)]
    pub n: usize,
    /// Arc probability (random only)
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Square side length (planar only)
    #[arg(long)]
    pub side: Option<f64>,
    /// Maximum arc weight (random only)
    #[arg(long)]
    pub wmax: Option<u64>,
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub source: Vertex,
    #[arg(long)]
    pub variant: Variant,
    /// Stop once this vertex is settled and report only its path
    #[arg(long)]
    pub target: Option<Vertex>,
    #[arg(long)]
    pub show_paths: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub topology: TopologyArg,
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = BenchPlan::DEFAULT_REPS)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "basic,tree,heap,fib")]
    pub variants: Vec<Variant>,
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
    #[arg(long)]
    pub side: Option<f64>,
    #[arg(long)]
    pub wmax: Option<u64>,
    /// `fixed` uses vertex 0; `random` draws a source per repetition
    #[arg(long, value_enum, default_value = "fixed")]
    pub source_policy: SourceArg,
    #[arg(long)]
    pub no_warmup: bool,
    #[arg(long, default_value_t = BenchPlan::DEFAULT_MEMORY_BUDGET >> 20)]
    pub memory_budget_mb: u64,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: graph::ParseError,
    },
    #[error(transparent)]
    Generator(#[from] generators::GenError),
    #[error(transparent)]
    Solve(#[from] solver::SolveError),
    #[error(transparent)]
    Bench(#[from] bench::BenchError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn usage<T>(msg: &str) -> Result<T, CliError> {
    Err(CliError::Usage(msg.to_string()))
}

fn create(path: &PathBuf) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(|source| CliError::File {
        path: path.clone(),
        source,
    })
}

pub fn execute<W: Write>(cli: Cli, out: &mut W) -> Result<(), CliError> {
    match cli.command {
        Command::Gen(args) => cmd_gen(&args, out),
        Command::Run(args) => cmd_run(&args, out),
        Command::Bench(args) => cmd_bench(&args, out),
    }
}

pub fn cmd_gen<W: Write>(args: &GenArgs, out: &mut W) -> Result<(), CliError> {
    let (graph, comment) = match args.topology {
        TopologyArg::Planar => {
            if args.p.is_some() || args.wmax.is_some() {
                return usage("--p and --wmax apply only to --topology random");
            }
            let cfg = PlanarConfig {
                n: args.n,
                side: args.side.unwrap_or(generators::DEFAULT_SIDE),
                seed: args.seed,
            };
            (generators::generate_planar(&cfg)?, cfg.describe())
        }
        TopologyArg::Random => {
            if args.side.is_some() {
                return usage("--side applies only to --topology planar");
            }
            let Some(p) = args.p else {
                return usage("--topology random requires --p");
            };
            let cfg = RandomConfig {
                n: args.n,
                p,
                w_max: args.wmax.unwrap_or(generators::DEFAULT_MAX_WEIGHT),
                seed: args.seed,
            };
            (generators::generate_random(&cfg)?, cfg.describe())
        }
    };
    graph::write_graph_annotated(&graph, &[comment], create(&args.output)?)?;
    writeln!(out, "n={} m={}", graph.vertex_count(), graph.arc_count())?;
    Ok(())
}

pub fn load_graph(path: &PathBuf) -> Result<Graph, CliError> {
    let file = File::open(path).map_err(|source| CliError::File {
        path: path.clone(),
        source,
    })?;
    graph::read_graph(BufReader::new(file)).map_err(|source| CliError::Parse {
        path: path.clone(),
        source,
    })
}

/// One report line: `v-<s> to v-<u>,<TAB>len = <L><TAB>path = [..]`.
pub fn path_line(result: &ShortestPathResult, u: Vertex) -> String {
    let s = result.source;
    match result.labels[u].value() {
        None => format!("v-{s} to v-{u},\tlen = infinity. No path exists"),
        Some(len) => {
            let path: Vec<String> = result.path_to(u).iter().map(ToString::to_string).collect();
            format!("v-{s} to v-{u},\tlen = {len}\tpath = [{}]", path.join(","))
        }
    }
}

pub fn cmd_run<W: Write>(args: &RunArgs, out: &mut W) -> Result<(), CliError> {
    let graph = load_graph(&args.graph)?;
    let start = Instant::now();
    let result = match args.target {
        Some(t) => solver::solve_target(&graph, args.source, t, args.variant)?,
        None => solver::solve(&graph, args.source, args.variant)?,
    };
    let elapsed = start.elapsed().as_secs_f64();

    writeln!(
        out,
        "Input graph has {} vertices and {} arcs",
        graph.vertex_count(),
        graph.arc_count()
    )?;
    writeln!(out, "{} took {elapsed:e} sec.", args.variant.description())?;
    match args.target {
        Some(t) => {
            writeln!(out, "Shortest path from source to target is as follows:")?;
            writeln!(out, "{}", path_line(&result, t))?;
        }
        None if args.show_paths => {
            writeln!(out, "Shortest paths from source to each vertex are as follows:")?;
            for u in 0..graph.vertex_count() {
                writeln!(out, "{}", path_line(&result, u))?;
            }
        }
        None => {}
    }
    Ok(())
}

pub fn bench_plan(args: &BenchArgs) -> Result<BenchPlan, CliError> {
    let topology = Topology::from(args.topology);
    match topology {
        Topology::Planar if args.p.is_some() || args.wmax.is_some() => {
            return usage("--p and --wmax apply only to --topology random")
        }
        Topology::Random if args.side.is_some() => return usage("--side applies only to --topology planar"),
        Topology::Random if args.p.is_none() => return usage("--topology random requires --p"),
        _ => {}
    }
    let plan = BenchPlan {
        topology,
        n_list: args.n_list.clone(),
        p: args.p,
        reps: args.reps,
        seed: args.seed,
        variants: args.variants.clone(),
        source: match args.source_policy {
            SourceArg::Fixed => SourcePolicy::Fixed(0),
            SourceArg::Random => SourcePolicy::Random,
        },
        side: args.side.unwrap_or(generators::DEFAULT_SIDE),
        w_max: args.wmax.unwrap_or(generators::DEFAULT_MAX_WEIGHT),
        warmup: !args.no_warmup,
        memory_budget_bytes: args.memory_budget_mb.saturating_mul(1 << 20),
    };
    plan.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(plan)
}

pub fn cmd_bench<W: Write>(args: &BenchArgs, out: &mut W) -> Result<(), CliError> {
    let plan = bench_plan(args)?;
    let csv_file = create(&args.output)?;
    let outcome = bench::run_bench(&plan)?;
    for skip in &outcome.skipped {
        eprintln!("skipped n={} rep={}: {}", skip.n, skip.rep, skip.reason);
    }
    bench::write_csv(&outcome.records, csv_file)?;
    write!(out, "{}", bench::format_summary(&bench::summarize(&outcome.records)))?;
    Ok(())
}
