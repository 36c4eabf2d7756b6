//! `simpy`: convert between Python and SimPy, check round trips, count
//! tokens, benchmark, fuzz, and run the gateway.
//!
//! Exit codes: 0 success, 1 a check or conversion failed, 2 usage or I/O
//! error. Payload goes to stdout, diagnostics to stderr.

mod commands;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "simpy", version, about = "Python <-> SimPy conversion toolkit")]
pub struct Cli {
    /// Grammar token table (TSV). Defaults to the built-in table.
    #[arg(long, global = true, env = "SIMPY_TABLE")]
    pub table: Option<PathBuf>,

    /// Worker threads for per-file work.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert one file between Python and SimPy.
    Convert {
        #[arg(long, value_enum)]
        to: Target,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check py -> simpy -> py over a file or directory.
    Roundtrip {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Token counts for Python vs SimPy under one or more vocabs.
    Tokens {
        path: PathBuf,
        #[command(flatten)]
        vocab: VocabArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Conversion and tokenization latency by token-count bucket.
    Bench {
        path: PathBuf,
        #[command(flatten)]
        vocab: VocabArgs,
        #[arg(long, default_value_t = 5)]
        repetitions: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Differential fuzzing of both grammars over generated trees.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'n', long = "cases", default_value_t = 1000)]
        cases: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run the DualCode gateway.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        listen: SocketAddr,
        /// Base URL of the chat-completion backend.
        #[arg(long, conflicts_with = "stub_mode", required_unless_present = "stub_mode")]
        upstream: Option<String>,
        /// Offline backend: `echo`, `pass`, or `fixed:TEXT`.
        #[arg(long, num_args = 0..=1, default_missing_value = "echo")]
        stub_mode: Option<String>,
    },
    /// Write the grammar token table as TSV.
    ExportTable {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Simpy,
    Python,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct VocabArgs {
    /// Bundled vocab class; repeat for several. Defaults depend on the command.
    #[arg(long = "vocab", value_parser = ["web", "code"])]
    pub bundled: Vec<String>,
    /// Directory holding a GPT-2 format vocab.json and merges.txt.
    #[arg(long = "vocab-dir")]
    pub dirs: Vec<PathBuf>,
    /// Split pattern for --vocab-dir vocabs.
    #[arg(long, default_value = "gpt2", value_parser = ["gpt2", "cl100k"])]
    pub pretokenizer: String,
}

/// Exit status of a command that ran.
pub enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
