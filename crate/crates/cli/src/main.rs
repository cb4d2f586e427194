//! Command-line front-end: `compute`, `verify` and `sweep` over body files
//! or a seeded corpus, written as JSON Lines or CSV.

mod commands;
mod config;
mod output;
mod pool;

use clap::{Parser, Subcommand};
use config::{corpus, parse_vector, CliError, CliResult, CommonArgs, CorpusKind, RunConfig};
use lp_santalo::santalo::SuiteOptions;
use std::io::Write;
use std::process::ExitCode;

const DEFAULT_P: &str = "0.5,1,2,inf";
const SWEEP_P: &str = "0.5,1,2,4,8,16,32,64,128,256,inf";

#[derive(Debug, Parser)]
#[command(name = "lp-santalo", version, about = "Lp-Mahler volumes, Lp-Santaló points and their inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Volume, barycenter, Lp-Santaló point, Lp-Mahler volume and Lp-polar volume.
    Compute {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the verification suite; exits 1 if any check fails.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Corpus used when no --body is given.
        #[arg(long, value_enum, default_value_t = CorpusKind::Random)]
        corpus: CorpusKind,
        /// Number of random hulls in the default corpus.
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Sampled points per sampled check.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long)]
        skip_lemmas: bool,
        #[arg(long)]
        skip_pipeline: bool,
    },
    /// Lp-Mahler volume and h_p(y0) over a grid of p.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Evaluation point for h_p, comma-separated; defaults to e_1.
        #[arg(long, value_name = "LIST")]
        y0: Option<String>,
    },
}

fn emit(rows: &[output::Row], cfg: &RunConfig) -> CliResult<()> {
    match &cfg.out {
        Some(path) => {
            let mut f = std::fs::File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            output::write_rows(rows, cfg.format, &mut f)?;
            f.flush().map_err(|e| CliError::Io(e.to_string()))
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            output::write_rows(rows, cfg.format, &mut lock)?;
            lock.flush().map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    let threads = pool::thread_cap()?;
    match cli.command {
        Command::Compute { common } => {
            let cfg = RunConfig::from_args(&common, DEFAULT_P, |seed| corpus(CorpusKind::Random, seed, 10))?;
            emit(&commands::compute(&cfg, threads)?, &cfg)?;
            Ok(false)
        }
        Command::Verify {
            common,
            corpus: kind,
            count,
            samples,
            skip_lemmas,
            skip_pipeline,
        } => {
            let cfg = RunConfig::from_args(&common, DEFAULT_P, |seed| corpus(kind, seed, count))?;
            let vo = commands::VerifyOptions {
                suite: SuiteOptions {
                    lemmas: !skip_lemmas,
                    pipeline: !skip_pipeline,
                    slice_samples: samples,
                    inclusion_samples: samples,
                },
            };
            let (rows, failed) = commands::verify(&cfg, threads, &vo)?;
            emit(&rows, &cfg)?;
            Ok(failed)
        }
        Command::Sweep { common, y0 } => {
            let cfg = RunConfig::from_args(&common, SWEEP_P, |seed| corpus(CorpusKind::Random, seed, 1))?;
            let y0 = y0.as_deref().map(|s| parse_vector(s, "y0")).transpose()?;
            emit(&commands::sweep(&cfg, threads, y0.as_deref())?, &cfg)?;
            Ok(false)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("verification failed: at least one check has verdict fail");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("lp-santalo: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
