//! The `leichtkit` command line: one binary whose subcommands cover
//! preprocessing, splitting, readability statistics, n-gram language models,
//! simplification metrics and complexity regression.
//!
//! Exit codes: 0 success, 1 invalid arguments or configuration, 2 file
//! errors (missing, unreadable or malformed input), 3 failed computation.

mod commands;
pub mod config;
pub mod error;
mod io;
pub mod pretty;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{complexity, corpus, evaluate, lm, Ctx};
pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "leichtkit",
    version,
    about = "Easy Language corpus and evaluation toolkit"
)]
struct Cli {
    /// TOML or JSON file with default settings; flags take precedence.
    #[arg(
        long,
        global = true,
        env = "LEICHTKIT_CONFIG",
        value_name = "FILE",
        display_order = 100
    )]
    config: Option<PathBuf>,

    /// Worker threads for per-document parallelism (default: all cores).
    /// Results do not depend on this value.
    #[arg(long, global = true, value_name = "N", display_order = 101)]
    threads: Option<usize>,

    /// Print results as human-readable tables instead of JSON.
    #[arg(long, global = true, display_order = 102)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Strip markup, rewrite bullet lists and apply a hyphenation lexicon.
    Preprocess(corpus::PreprocessArgs),
    /// Seeded train/validation/test split of a JSON Lines corpus.
    Split(corpus::SplitArgs),
    /// Harvest hyphenated compound nouns into a lexicon.
    Lexicon(corpus::LexiconArgs),
    /// Per-document readability and layout statistics.
    Stats(corpus::StatsArgs),
    /// Train a smoothed n-gram language model.
    TrainLm(lm::TrainArgs),
    /// Sample-wise perplexity of a corpus under a model.
    Perplexity(lm::PerplexityArgs),
    /// Label documents easy or normal by comparing two models.
    Discriminate(lm::DiscriminateArgs),
    /// Score simplifications with SARI, BLEU and ROUGE-L.
    Evaluate(evaluate::EvaluateArgs),
    /// Sentence complexity regression on a 1 to 7 scale.
    Complexity {
        #[command(subcommand)]
        action: complexity::Action,
    },
}

fn dispatch(command: Command, ctx: &Ctx) -> CliResult<()> {
    match command {
        Command::Preprocess(a) => corpus::preprocess(a, ctx),
        Command::Split(a) => corpus::split(a, ctx),
        Command::Lexicon(a) => corpus::lexicon(a, ctx),
        Command::Stats(a) => corpus::stats(a, ctx),
        Command::TrainLm(a) => lm::train_lm(a, ctx),
        Command::Perplexity(a) => lm::perplexity(a, ctx),
        Command::Discriminate(a) => lm::discriminate(a, ctx),
        Command::Evaluate(a) => evaluate::evaluate(a, ctx),
        Command::Complexity { action } => complexity::run(action, ctx),
    }
}

fn execute(cli: Cli) -> CliResult<()> {
    let config = config::ConfigFile::load(cli.config.as_deref())?;
    let threads = match cli.threads {
        Some(n) => Some(n),
        None => config.threads()?,
    };
    let ctx = Ctx {
        config,
        pretty: cli.pretty,
    };
    match threads {
        Some(0) => Err(CliError::flag("--threads", "must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::flag("--threads", e))?
            .install(|| dispatch(cli.command, &ctx)),
        None => dispatch(cli.command, &ctx),
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code. Errors are reported on stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) | Err(CliError::PipeClosed) => 0,
        Err(e) => {
            eprintln!("leichtkit: {e}");
            e.exit_code()
        }
    }
}
