//! `senticite`: train, evaluate, cross-validate, sweep and analyze.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::{FileConfig, Opts, Settings};

/// A problem with the invocation or its inputs (exit code 2).
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

#[derive(Debug, Parser)]
#[command(name = "senticite", version, about = "Citation sentiment and nature analysis")]
struct Cli {
    /// Log and print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// TOML file with defaults for the run flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgChoice {
    Svm,
    Paum,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepMode {
    /// Vary the number of test documents.
    Documents,
    /// Vary the number of training examples.
    TrainSize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Train models and write them to the output directory.
    Train {
        /// Annotated corpus (JSON Lines); the bundled corpus of --task otherwise.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "both")]
        alg: AlgChoice,
        /// Train on this many examples per class and write the rest as a test set.
        #[arg(long)]
        per_class: Option<usize>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Score trained models on an annotated corpus.
    Evaluate {
        /// Model file; give one SVM and one perceptron model to also score fusion.
        #[arg(long = "model", required = true)]
        models: Vec<PathBuf>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Repeated seeded 50/50 train/test runs.
    Crossval {
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        runs: u32,
        #[arg(long, value_enum, default_value = "both")]
        alg: AlgChoice,
        #[command(flatten)]
        opts: Opts,
    },
    /// Analyze a text file, or every .txt file of a directory.
    Analyze {
        input: PathBuf,
        /// Directory with sentiment-svm, sentiment-paum and nature-paum model
        /// files; models are trained on the bundled corpora otherwise.
        #[arg(long)]
        models: Option<PathBuf>,
        #[command(flatten)]
        opts: Opts,
    },
    /// F-score as a function of test documents or training examples.
    Sweep {
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: SweepMode,
        /// Comma-separated sweep values.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<usize>,
        /// Training examples per class for the documents sweep.
        #[arg(long)]
        per_class: Option<usize>,
        #[command(flatten)]
        opts: Opts,
    },
}

impl Command {
    fn opts(&self) -> &Opts {
        match self {
            Command::Train { opts, .. }
            | Command::Evaluate { opts, .. }
            | Command::Crossval { opts, .. }
            | Command::Analyze { opts, .. }
            | Command::Sweep { opts, .. } => opts,
        }
    }
}

fn init_logging(json: bool) {
    let mut b = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"));
    if json {
        b.format(|buf, rec| {
            let line = serde_json::json!({
                "level": rec.level().as_str(),
                "target": rec.target(),
                "message": rec.args().to_string(),
            });
            writeln!(buf, "{line}")
        });
    } else {
        b.format(|buf, rec| writeln!(buf, "senticite: {}: {}", rec.level().as_str().to_lowercase(), rec.args()));
    }
    b.target(env_logger::Target::Stderr).init();
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<senticite::Error>() {
            return match e {
                senticite::Error::Io { .. } => 1,
                _ => 2,
            };
        }
    }
    1
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let settings = Settings::resolve(cli.command.opts(), &file)?;
    let out = commands::Output { json: cli.json };
    match cli.command {
        Command::Train {
            corpus,
            alg,
            per_class,
            ..
        } => commands::train(&settings, corpus.as_deref(), alg, per_class, &out),
        Command::Evaluate { models, corpus, .. } => commands::evaluate(&settings, &models, corpus.as_deref(), &out),
        Command::Crossval { corpus, runs, alg, .. } => {
            commands::crossval(&settings, corpus.as_deref(), runs as usize, alg, &out)
        }
        Command::Analyze { input, models, .. } => commands::analyze(&settings, &input, models.as_deref(), &out),
        Command::Sweep {
            corpus,
            mode,
            values,
            per_class,
            ..
        } => commands::sweep(&settings, corpus.as_deref(), mode, &values, per_class, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_logging(cli.json);
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            log::error!("{err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
