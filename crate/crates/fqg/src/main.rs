//! `fqg`: analyze finite quantum groups and their coactions from JSON
//! documents.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fqg::cli::{self, CliError, ReduceMode, RunOptions};
use fqg::numkit::ToleranceConfig;

#[derive(Parser)]
#[command(name = "fqg", version, about = "Finite quantum group toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Input document (JSON)
    file: PathBuf,
    /// Seed for the block-decomposition randomness
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Uniform tolerance for rank and equality decisions
    #[arg(long)]
    tol: Option<f64>,
    /// Peter-Weyl cache directory (default: $FQG_CACHE_DIR when set)
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Pretty-print the JSON report
    #[arg(long)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Hopf axioms, Haar state, and corepresentation blocks of a quantum group
    AnalyzeGroup(CommonArgs),
    /// Flags, isotypical decomposition, and core/kernel split of a coaction
    AnalyzeAction(CommonArgs),
    /// Minimal, reduced, or universal reduction of a coaction
    Reduce {
        #[command(flatten)]
        common: CommonArgs,
        /// Reduction procedure to run
        #[arg(long, value_parser = ["minimal", "reduced", "universal"])]
        mode: String,
    },
    /// Axiom checks only
    Verify(CommonArgs),
}

fn options_from(common: &CommonArgs) -> Result<RunOptions, CliError> {
    let tol = match common.tol {
        Some(t) => ToleranceConfig::uniform(t).map_err(|e| CliError::Input(e.to_string()))?,
        None => ToleranceConfig::default(),
    };
    let cache_dir = common
        .cache
        .clone()
        .or_else(|| std::env::var_os(cli::cache::CACHE_ENV).map(PathBuf::from));
    Ok(RunOptions { seed: common.seed, tol, cache_dir })
}

fn main() -> ExitCode {
    let parsed = Cli::parse();
    let (common, outcome) = match &parsed.command {
        Command::AnalyzeGroup(c) => (c, dispatch(c, cli::cmd_analyze_group)),
        Command::AnalyzeAction(c) => (c, dispatch(c, cli::cmd_analyze_action)),
        Command::Reduce { common, mode } => {
            let mode = mode.clone();
            (common, dispatch(common, move |doc, opts| {
                let mode = ReduceMode::parse(&mode)?;
                cli::cmd_reduce(doc, mode, opts)
            }))
        }
        Command::Verify(c) => (c, dispatch(c, cli::cmd_verify)),
    };
    match outcome {
        Ok((report, code)) => {
            println!("{}", cli::render(&report, common.pretty));
            ExitCode::from(code as u8)
        }
        Err(e) => {
            println!("{}", cli::render(&e.to_json(), common.pretty));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(
    common: &CommonArgs,
    f: impl FnOnce(&cli::SpecDocument, &RunOptions) -> Result<(serde_json::Value, i32), CliError>,
) -> Result<(serde_json::Value, i32), CliError> {
    let opts = options_from(common)?;
    let doc = cli::parse_spec(&common.file)?;
    f(&doc, &opts)
}
