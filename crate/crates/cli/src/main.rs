mod commands;
mod gen;
mod scan;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sgraph::bounds::SuiteConfig;
use sgraph::combinatorics::{DEFAULT_CHEEGER_LIMIT, DEFAULT_FRUSTRATION_LIMIT};
use sgraph::curvature::FalsifyOptions;
use sgraph::graph::DEFAULT_SCAN_EDGE_LIMIT;
use sgraph::spectral::PSolverOptions;
use sgraph::{Dimension, SignChoice, SignedGraph};

use commands::{CdpRequest, Format, Output};

const EXIT_USAGE: u8 = 1;
const EXIT_CERTIFICATE: u8 = 2;
const EXIT_SIZE: u8 = 3;

/// Spectra, curvature, frustration and eigenvalue certificates for signed graphs.
#[derive(Parser)]
#[command(name = "sgraph", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Edge-list file: one `u v s` line per edge, `s` is +1 or -1.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Generator spec, e.g. `cycle:5:unbalanced`, `hypercube1neg:3`, `cycle:3*path:2`.
    #[arg(long)]
    gen: Option<String>,
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Signs {
    Given,
    Positive,
    Negative,
}

impl From<Signs> for SignChoice {
    fn from(s: Signs) -> Self {
        match s {
            Signs::Given => SignChoice::Given,
            Signs::Positive => SignChoice::AllPositive,
            Signs::Negative => SignChoice::AllNegative,
        }
    }
}

fn parse_dimension(s: &str) -> Result<Dimension, String> {
    match s {
        "inf" | "infinity" | "∞" => Ok(None),
        _ => {
            let v: f64 = s.parse().map_err(|_| format!("invalid dimension {s:?}"))?;
            if v > 0.0 && v.is_finite() {
                Ok(Some(v))
            } else {
                Err(format!("dimension must be positive, got {s}"))
            }
        }
    }
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues of the signed Laplacian, optionally p-Laplacian estimates.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Signs::Given)]
        signs: Signs,
        /// Exponents for the p-Laplacian solver, comma separated.
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
        #[arg(long, default_value_t = 50, value_parser = parse_positive)]
        restarts: usize,
        #[arg(long, default_value_t = PSolverOptions::default().seed)]
        seed: u64,
    },
    /// Bakry-Emery curvature per vertex.
    Curvature {
        #[command(flatten)]
        common: Common,
        /// Dimensions, comma separated; `inf` allowed.
        #[arg(long = "N", value_delimiter = ',', default_value = "inf", value_parser = parse_dimension)]
        n: Vec<Dimension>,
        /// Also run the independent semidefinite check.
        #[arg(long)]
        psd: bool,
        /// Search for counterexamples to the p-curvature condition with this p (needs --k).
        #[arg(long, requires = "k")]
        p: Option<f64>,
        #[arg(long, requires = "p", allow_negative_numbers = true)]
        k: Option<f64>,
        #[arg(long, default_value_t = FalsifyOptions::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = FalsifyOptions::default().starts, value_parser = parse_positive)]
        starts: usize,
    },
    /// Exact frustration index.
    Frustration {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_FRUSTRATION_LIMIT, value_parser = parse_positive)]
        limit: usize,
    },
    /// Exact signed Cheeger constant.
    Cheeger {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_CHEEGER_LIMIT, value_parser = parse_positive)]
        limit: usize,
    },
    /// Strong nodal domains of a function (default: first eigenfunction).
    Nodal {
        #[command(flatten)]
        common: Common,
        /// File with `label value` lines.
        #[arg(long)]
        function: Option<PathBuf>,
        /// Walk given as comma-separated vertex labels.
        #[arg(long, value_delimiter = ',')]
        walk: Vec<String>,
    },
    /// Evaluate every applicable inequality; exit status 2 on a certified failure.
    Bounds {
        #[command(flatten)]
        common: Common,
        #[arg(long = "N", default_value = "inf", value_parser = parse_dimension)]
        n: Dimension,
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,4")]
        eps: Vec<f64>,
        /// Harnack parameters; default is a grid above the admissible threshold.
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "1.5,2,3")]
        p: Vec<f64>,
        /// Use this K instead of the computed curvature.
        #[arg(long, allow_negative_numbers = true)]
        k: Option<f64>,
        /// p-curvature constant for the p-Lichnerowicz check at p > 2.
        #[arg(long, allow_negative_numbers = true)]
        kp: Option<f64>,
        #[arg(long, default_value_t = 50, value_parser = parse_positive)]
        restarts: usize,
        #[arg(long, default_value_t = PSolverOptions::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_FRUSTRATION_LIMIT, value_parser = parse_positive)]
        frustration_limit: usize,
        #[arg(long, default_value_t = DEFAULT_CHEEGER_LIMIT, value_parser = parse_positive)]
        cheeger_limit: usize,
    },
    /// Diameter bounds over all switching classes of the underlying graph.
    SignScan {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_SCAN_EDGE_LIMIT, value_parser = parse_positive)]
        limit: usize,
    },
    /// Write the graph as an edge list.
    Generate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Graph(#[from] sgraph::Error),
}

impl From<gen::GenError> for CliError {
    fn from(e: gen::GenError) -> Self {
        match e {
            gen::GenError::Graph(g) => CliError::Graph(g),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Graph(sgraph::Error::SizeLimit { .. }) => EXIT_SIZE,
            _ => EXIT_USAGE,
        }
    }
}

fn load(source: &GraphSource) -> Result<SignedGraph, CliError> {
    match (&source.input, &source.gen) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            SignedGraph::parse_edge_list(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
        }
        (None, Some(spec)) => Ok(gen::parse_gen(spec)?),
        (None, None) => Err(CliError::Usage("one of --input or --gen is required".into())),
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Result<Output, CliError> {
    Ok(match command {
        Command::Spectrum { common, signs, p, restarts, seed } => {
            let g = load(&common.source)?;
            let solver = PSolverOptions { restarts, seed, ..Default::default() };
            commands::spectrum_cmd(&g, signs.into(), &p, &solver, common.format)?
        }
        Command::Curvature { common, n, psd, p, k, seed, starts } => {
            let g = load(&common.source)?;
            let cdp = p.zip(k).map(|(p, k)| CdpRequest { p, k, options: FalsifyOptions { seed, starts, ..Default::default() } });
            commands::curvature_cmd(&g, &n, psd, cdp, common.format)?
        }
        Command::Frustration { common, limit } => commands::frustration_cmd(&load(&common.source)?, limit, common.format)?,
        Command::Cheeger { common, limit } => commands::cheeger_cmd(&load(&common.source)?, limit, common.format)?,
        Command::Nodal { common, function, walk } => {
            let g = load(&common.source)?;
            let text = function.as_ref().map(read).transpose()?;
            commands::nodal_cmd(&g, text.as_deref(), &walk, common.format)?
        }
        Command::Bounds { common, n, eps, alpha, p, k, kp, restarts, seed, frustration_limit, cheeger_limit } => {
            let g = load(&common.source)?;
            let mut p = p;
            p.sort_by(f64::total_cmp);
            p.dedup();
            let config = SuiteConfig {
                dimension: n,
                alphas: (!alpha.is_empty()).then_some(alpha),
                epsilons: eps,
                p_grid: p,
                solver: PSolverOptions { restarts, seed, ..Default::default() },
                frustration_limit,
                cheeger_limit,
                supplied_k: k,
                supplied_kp: kp,
                ..Default::default()
            };
            commands::bounds_cmd(&g, &config, common.format)?
        }
        Command::SignScan { common, limit } => commands::sign_scan_cmd(&load(&common.source)?, limit, common.format)?,
        Command::Generate { common, output } => {
            let out = commands::generate_cmd(&load(&common.source)?, common.format);
            if let Some(path) = output {
                std::fs::write(&path, &out.text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                Output { text: String::new(), failure: false }
            } else {
                out
            }
        }
    })
}

fn configure_workers() -> Result<(), CliError> {
    let Ok(value) = std::env::var("SGRAPH_WORKERS") else { return Ok(()) };
    let n = parse_positive(value.trim()).map_err(|e| CliError::Usage(format!("SGRAPH_WORKERS: {e}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("SGRAPH_WORKERS: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = configure_workers().and_then(|()| run(cli.command));
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.failure {
                ExitCode::from(EXIT_CERTIFICATE)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
