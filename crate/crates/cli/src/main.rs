//! `plahx` command-line interface.
//!
//! Exit codes: 0 success, 1 plan invalid or no plan found, 2 translation
//! error class, 3 usage or I/O error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NO_PLAN: u8 = 1;
pub const EXIT_TRANSLATION: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "plahx",
    version,
    about = "Language-to-plan pipeline with population-based subspace search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan for a PDDL domain/problem pair; prints the plan and a JSON run record.
    Plan(PlanArgs),
    /// Translate an instruction into an abstraction.
    Translate(TranslateArgs),
    /// Translate, embed into a problem file, and plan.
    Solve(SolveArgs),
    /// Validate a plan file against a domain/problem pair.
    Validate(ValidateArgs),
    /// Generate benchmark instances, run the pipeline and report.
    Bench(BenchArgs),
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// RNG seed of the population search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    pop_size: usize,
    #[arg(long, default_value_t = 100)]
    max_iters: usize,
    /// Stop once this many distinct plans were archived.
    #[arg(long, default_value_t = 2)]
    archive_threshold: usize,
    /// Node expansions per individual per generation.
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    /// Maximum individual length (default: half the grounded actions).
    #[arg(long)]
    l_max: Option<usize>,
    /// Run local searches sequentially (deterministic).
    #[arg(long)]
    single_thread: bool,
    /// Use full-space A* instead of the population search.
    #[arg(long)]
    baseline: bool,
    /// Write the per-generation JSON-lines log here.
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Args)]
struct PlanArgs {
    #[arg(long)]
    domain: PathBuf,
    #[arg(long)]
    problem: PathBuf,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args, Clone)]
struct ClientArgs {
    /// Chat-completion endpoint URL (bearer token from $PLAHX_API_KEY).
    #[arg(long, conflicts_with = "mock")]
    endpoint: Option<String>,
    /// Model name sent to the endpoint.
    #[arg(long)]
    model: Option<String>,
    /// Fixture directory with `<instance-id>.completion.txt` files.
    #[arg(long)]
    mock: Option<PathBuf>,
    /// Fixture key for --mock.
    #[arg(long)]
    instance_id: Option<String>,
    /// Number of demonstrations.
    #[arg(long, default_value_t = 6)]
    shots: usize,
    /// Context window in tokens.
    #[arg(long, default_value_t = 5000)]
    context_limit: usize,
    #[arg(long, default_value_t = 0.0)]
    temperature: f64,
}

#[derive(Args)]
struct TranslateArgs {
    #[arg(long)]
    domain: PathBuf,
    #[arg(long)]
    instruction: String,
    #[command(flatten)]
    client: ClientArgs,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    domain: PathBuf,
    #[arg(long)]
    instruction: String,
    /// Name of the embedded problem.
    #[arg(long, default_value = "query")]
    problem_name: String,
    /// Also write the embedded problem file here.
    #[arg(long)]
    emit_problem: Option<PathBuf>,
    #[command(flatten)]
    client: ClientArgs,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    domain: PathBuf,
    #[arg(long)]
    problem: PathBuf,
    #[arg(long)]
    plan: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Blocks,
    Hanoi,
    Grippers,
    Rearrangement,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Instances per domain.
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Seed for instance generation and search.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Plan with full-space A* instead of the population search.
    #[arg(long)]
    baseline: bool,
    #[arg(long)]
    single_thread: bool,
    /// Report 0 planning seconds so reports are byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write per-instance run records (JSON lines) here.
    #[arg(long)]
    records: Option<PathBuf>,
    /// Write domains, gold problems, instructions and mock completions here.
    #[arg(long)]
    write_fixtures: Option<PathBuf>,
    /// Read completions from this fixture directory instead of the gold abstractions.
    #[arg(long)]
    mock: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Plan(args) => commands::plan(args),
        Command::Translate(args) => commands::translate(args),
        Command::Solve(args) => commands::solve(args),
        Command::Validate(args) => commands::validate(args),
        Command::Bench(args) => commands::bench(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
