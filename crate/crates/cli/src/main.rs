mod commands;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Failure;

#[derive(Parser)]
#[command(
    name = "edfn",
    version,
    about = "Edit-distance functions of powers of cycles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form gamma and ed curves of C_h^t, with the search-based gamma when feasible.
    Curve(CurveArgs),
    /// Clique spectrum and its extreme points.
    Spectrum(SpectrumArgs),
    /// g_K(p) of a CRG.
    G(GArgs),
    /// Whether a graph embeds into a CRG.
    Embed(EmbedArgs),
    /// Location and value of the maximum of gamma for C_h^t.
    Maxpoint(MaxpointArgs),
    /// Run verification suites; exits with status 1 on any failure.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args)]
pub struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct Grid {
    /// Comma-separated list of p values ("1/3", "0.25", "1").
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["samples", "p_min", "p_max"])]
    p: Vec<String>,
    /// Number of evenly spaced samples; without it, 201 samples plus the special points.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, requires = "samples")]
    p_min: Option<String>,
    #[arg(long, requires = "samples")]
    p_max: Option<String>,
}

#[derive(Args)]
pub struct PowerCycle {
    #[arg(long)]
    h: usize,
    #[arg(long)]
    t: usize,
}

#[derive(Args)]
pub struct CurveArgs {
    #[command(flatten)]
    cycle: PowerCycle,
    #[command(flatten)]
    grid: Grid,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Vertex bound for the search-based gamma column; skipped above it.
    #[arg(long, default_value_t = edfn::graph::DEFAULT_EXACT_BOUND)]
    bound: usize,
    /// Omit the search-based gamma columns.
    #[arg(long)]
    no_search: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
pub struct GraphSource {
    #[arg(long, requires = "t", conflicts_with = "graph")]
    h: Option<usize>,
    #[arg(long, requires = "h")]
    t: Option<usize>,
    /// Graph JSON file: {"n": 5, "edges": [[0, 1], ...]}.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long, default_value_t = edfn::graph::DEFAULT_EXACT_BOUND)]
    bound: usize,
    /// json: pairs and extreme points; csv: the gamma curve.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    grid: Grid,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
pub struct GArgs {
    /// CRG JSON file.
    #[arg(long)]
    crg: PathBuf,
    #[arg(long)]
    p: String,
    #[arg(long, value_enum, conflicts_with_all = ["exact", "numeric"])]
    mode: Option<ModeArg>,
    #[arg(long, conflicts_with = "numeric")]
    exact: bool,
    #[arg(long)]
    numeric: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Numeric,
}

#[derive(Args)]
pub struct EmbedArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long)]
    crg: PathBuf,
    /// Time budget in seconds.
    #[arg(long, default_value_t = 10.0)]
    timeout: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
pub struct MaxpointArgs {
    #[command(flatten)]
    cycle: PowerCycle,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Facts,
    Lemma1,
    Theorem1,
    Weights,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    #[arg(long, default_value_t = 400)]
    h_max: usize,
    #[arg(long, default_value_t = 8)]
    t_max: usize,
    /// Seed of the random CRG corpus.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    corpus_size: usize,
    /// Per-embedding time budget in seconds.
    #[arg(long, default_value_t = 10.0)]
    timeout: f64,
    #[command(flatten)]
    output: Output,
}

fn emit(output: &Output, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::io(path, e)),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| Failure::io("stdout", e))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Curve(a) => commands::curve(&a)
            .and_then(|s| emit(&a.output, &s))
            .map(|_| true),
        Command::Spectrum(a) => commands::spectrum(&a)
            .and_then(|s| emit(&a.output, &s))
            .map(|_| true),
        Command::G(a) => commands::g(&a)
            .and_then(|s| emit(&a.output, &s))
            .map(|_| true),
        Command::Embed(a) => commands::embed(&a)
            .and_then(|s| emit(&a.output, &s))
            .map(|_| true),
        Command::Maxpoint(a) => commands::maxpoint(&a)
            .and_then(|s| emit(&a.output, &s))
            .map(|_| true),
        Command::Verify(a) => {
            commands::verify(&a).and_then(|(s, ok)| emit(&a.output, &s).map(|_| ok))
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("{}", f.to_json());
            ExitCode::from(2)
        }
    }
}
