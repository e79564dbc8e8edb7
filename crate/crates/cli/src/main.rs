use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use netcomplexity::commands::{run_bounds, run_compute, to_json, Metadata};
use netcomplexity::complexity::AnalysisOptions;
use netcomplexity::experiment::{run_experiment, run_table1, ExperimentConfig, GraphSource};
use netcomplexity::io::{parse_edge_list, parse_groups, write_edge_list, EdgeListOptions, Groups};
use netcomplexity::{generate, rewire_uniform, DirectedGraph, Error, GeneratorSpec, Result};

/// Structural complexity index of directed networks of first-order linear
/// nodes.
///
/// Exit codes: 0 success, 2 input error, 3 numerical failure. Errors are
/// printed to stderr as one JSON line.
#[derive(Parser, Debug)]
#[command(name = "netcomplexity", version)]
struct Cli {
    /// Master seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Absolute singular-value threshold for numerical ranks
    /// [default: σ_max · max(rows, cols) · machine epsilon].
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural index φ_G, per-group matching numbers, bounds and N_min.
    Compute(ComputeArgs),
    /// Bounds ν(G) ≤ φ_G ≤ n − |sinks| and N_min = max(1, n − ν(G)).
    Bounds(InputArgs),
    /// Generate a Barabási–Albert or Watts–Strogatz graph as an edge list.
    Generate(GeneratorArgs),
    /// Place the same number of edges uniformly at random.
    Rewire(InputArgs),
    /// Monte Carlo sweep over group counts, written as CSV plus a summary.
    Experiment(ExperimentArgs),
    /// Normalized index of a network and the mean over uniform rewirings.
    ///
    /// The datasets used for comparison are not bundled: the C. elegans
    /// chemical synapse connectome (Varshney et al. 2011), the northern
    /// European power grid (Menck et al. 2014) and the US political blogs
    /// network (Adamic and Glance 2005).
    Table1(Table1Args),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Edge list: `src,dst[,weight]` per line, optional `n=<count>` header.
    edges: PathBuf,

    /// Fail unless the edge list starts with an `n=<count>` header.
    #[arg(long)]
    require_header: bool,
}

impl InputArgs {
    fn load(&self) -> Result<DirectedGraph> {
        parse_edge_list(
            &self.edges,
            EdgeListOptions {
                require_header: self.require_header,
            },
        )
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Grouping {
    /// All nodes share one γ.
    Single,
    /// Every node has its own γ.
    Distinct,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Groups file: `node,label` or `node,gamma` per line.
    #[arg(long)]
    groups: Option<PathBuf>,

    /// Grouping used when no groups file is given.
    #[arg(long, value_enum, default_value_t = Grouping::Single)]
    grouping: Grouping,

    /// Merge γ values closer than this (off by default: exact equality).
    #[arg(long)]
    gamma_tol: Option<f64>,

    /// Numerical index for one weight realization (file weights, or
    /// standard-normal draws when the file has none).
    #[arg(long)]
    numerical: bool,

    /// Also run both state-space McMillan-degree oracles.
    #[arg(long)]
    oracle: bool,

    /// Fraction of random weight draws whose numerical index equals φ_G.
    #[arg(long, value_name = "TRIALS")]
    genericity: Option<usize>,

    /// Add wall-clock time under `metadata`.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelName {
    /// Barabási–Albert preferential attachment.
    Ba,
    /// Watts–Strogatz small world.
    Ws,
}

#[derive(Args, Debug)]
struct GeneratorArgs {
    #[arg(long, value_enum)]
    model: ModelName,

    /// Number of nodes.
    #[arg(long)]
    n: usize,

    /// Edges attached per new node (Barabási–Albert).
    #[arg(long, default_value_t = 2)]
    m: usize,

    /// Even ring-lattice degree (Watts–Strogatz).
    #[arg(long, default_value_t = 4)]
    ring_degree: usize,

    /// Rewiring probability (Watts–Strogatz).
    #[arg(long, default_value_t = 0.1)]
    p: f64,
}

impl GeneratorArgs {
    fn spec(&self, seed: u64) -> GeneratorSpec {
        match self.model {
            ModelName::Ba => GeneratorSpec::barabasi_albert(self.n, self.m, seed),
            ModelName::Ws => GeneratorSpec::watts_strogatz(self.n, self.ring_degree, self.p, seed),
        }
    }
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// Rewire this edge list per trial instead of generating graphs.
    #[arg(long, conflicts_with = "model")]
    input: Option<PathBuf>,

    #[arg(long, value_enum, required_unless_present = "input")]
    model: Option<ModelName>,

    #[arg(long, default_value_t = 100)]
    n: usize,

    #[arg(long, default_value_t = 2)]
    m: usize,

    #[arg(long, default_value_t = 4)]
    ring_degree: usize,

    #[arg(long, default_value_t = 0.1)]
    p: f64,

    /// Group counts, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1, 25, 50, 75, 100])]
    k: Vec<usize>,

    /// Monte Carlo runs per group count.
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

#[derive(Args, Debug)]
struct Table1Args {
    #[command(flatten)]
    input: InputArgs,

    /// Groups file: `node,label` or `node,gamma` per line.
    groups: PathBuf,

    /// Number of uniform rewirings.
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

fn emit(out: Option<&Path>, payload: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, payload).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn summary_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.summary.csv"))
}

fn run(cli: &Cli) -> Result<()> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Compute(args) => {
            let start = Instant::now();
            let g = args.input.load()?;
            let groups = match (&args.groups, args.grouping) {
                (Some(path), _) => parse_groups(path, &g, args.gamma_tol)?,
                (None, Grouping::Single) => Groups::single(g.n()),
                (None, Grouping::Distinct) => Groups::distinct(&g),
            };
            let opts = AnalysisOptions {
                numerical: args.numerical,
                oracle: args.oracle,
                tolerance: cli.tol,
                seed: cli.seed,
            };
            let mut result = run_compute(&g, &groups, &opts, args.genericity)?;
            if args.timing {
                result.metadata = Some(Metadata {
                    elapsed_ms: start.elapsed().as_millis(),
                });
            }
            emit(out, &to_json(&result))
        }
        Command::Bounds(input) => emit(out, &to_json(&run_bounds(&input.load()?))),
        Command::Generate(args) => emit(out, &write_edge_list(&generate(&args.spec(cli.seed))?)),
        Command::Rewire(input) => emit(out, &write_edge_list(&rewire_uniform(&input.load()?, cli.seed)?)),
        Command::Experiment(args) => {
            let source = match (&args.input, args.model) {
                (Some(path), _) => GraphSource::Rewire(parse_edge_list(path, EdgeListOptions::default())?),
                (None, Some(model)) => GraphSource::Generator(
                    GeneratorArgs {
                        model,
                        n: args.n,
                        m: args.m,
                        ring_degree: args.ring_degree,
                        p: args.p,
                    }
                    .spec(cli.seed),
                ),
                (None, None) => unreachable!("clap requires --model or --input"),
            };
            let results = run_experiment(&ExperimentConfig {
                source,
                k_values: args.k.clone(),
                trials: args.trials,
                master_seed: cli.seed,
            })?;
            match out {
                Some(path) => {
                    emit(Some(path), &results.records_csv())?;
                    emit(Some(&summary_path(path)), &results.summary_csv())
                }
                None => emit(None, &format!("{}\n{}", results.records_csv(), results.summary_csv())),
            }
        }
        Command::Table1(args) => {
            let g = args.input.load()?;
            let groups = parse_groups(&args.groups, &g, None)?;
            let summary = run_table1(&g, &groups.dynamics, args.trials, cli.seed)?;
            emit(out, &to_json(&summary))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json_line());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
