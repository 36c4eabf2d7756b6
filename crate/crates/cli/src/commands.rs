use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use simpy_core::bench::{
    bench_convert_sources, bench_tokenize_sources, conversion_ratio, write_latency_csv, BenchError,
};
use simpy_core::convert::{
    fuzz_roundtrip_table, py_to_simpy, roundtrip_check, simpy_to_py, write_csv, write_jsonl, ConvertError,
    RoundTripReport,
};
use simpy_core::corpus::{load_sources, CorpusError};
use simpy_core::tokens::{bundled_vocab, compare_sources, load_vocab, BpeVocab, TokenError, VocabError};
use simpy_core::{load_table, GrammarTokenTable, TableError, TableSource};
use simpy_gateway::{GatewayConfig, GatewayError, StubMode, Upstream};

use crate::{Cli, Command, Format, Outcome, Target, VocabArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("grammar table: {0}")]
    Table(#[from] TableError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Vocab(#[from] VocabError),
    #[error(transparent)]
    Tokens(#[from] TokenError),
    #[error(transparent)]
    Bench(#[from] BenchError),
    #[error(transparent)]
    Gateway(#[from] GatewayError),
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_payload(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn json_line(value: &impl Serialize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(std::io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let table = match &cli.table {
        Some(p) => load_table(TableSource::Path(p))?,
        None => load_table(TableSource::Default)?,
    };
    match cli.command {
        Command::Convert { to, input, output } => convert(&table, to, &input, output.as_deref()),
        Command::Roundtrip { path, format } => roundtrip(&table, &path, format),
        Command::Tokens { path, vocab, format } => tokens(&table, &path, &vocab, format),
        Command::Bench {
            path,
            vocab,
            repetitions,
            format,
        } => bench(&table, &path, &vocab, repetitions, format),
        Command::Fuzz { seed, cases, format } => fuzz(&table, seed, cases, format),
        Command::Serve {
            listen,
            upstream,
            stub_mode,
        } => serve(table, listen, upstream, stub_mode),
        Command::ExportTable { output } => {
            write_payload(output.as_deref(), &table.to_tsv())?;
            Ok(Outcome::Ok)
        }
    }
}

fn convert(table: &GrammarTokenTable, to: Target, input: &Path, output: Option<&Path>) -> Result<Outcome> {
    let source = read(input)?;
    let converted = match to {
        Target::Simpy => py_to_simpy(&source, table),
        Target::Python => simpy_to_py(&source, table),
    };
    match converted {
        Ok(text) => {
            write_payload(output, &text)?;
            Ok(Outcome::Ok)
        }
        Err(e @ ConvertError::Parse(_)) | Err(e @ ConvertError::Emit(_)) => {
            eprintln!("{}: {e}", input.display());
            Ok(Outcome::Failed)
        }
    }
}

fn roundtrip(table: &GrammarTokenTable, path: &Path, format: Format) -> Result<Outcome> {
    let sources = load_sources(path)?;
    if sources.is_empty() {
        eprintln!("warning: no .py files under {}", path.display());
        return Ok(Outcome::Ok);
    }
    let reports: Vec<RoundTripReport> = sources
        .par_iter()
        .map(|(id, text)| roundtrip_check(id, text, table))
        .collect();
    let failed = reports.iter().filter(|r| !r.ast_equal).count();
    match format {
        Format::Csv => write_csv(&reports, std::io::stdout().lock())?,
        Format::Json => write_jsonl(&reports, std::io::stdout().lock())?,
        Format::Table => {
            let mut out = std::io::stdout().lock();
            for r in reports.iter().filter(|r| !r.ast_equal) {
                let stage = r
                    .failure_stage
                    .map_or("compare".to_string(), |s| format!("{s:?}"));
                let err = r
                    .error
                    .as_deref()
                    .and_then(|e| e.lines().next())
                    .unwrap_or("trees differ");
                writeln!(out, "FAIL {}  [{stage}] {err}", r.file_id)?;
            }
            let text_eq = reports
                .iter()
                .filter(|r| r.text_equal_ignoring_whitespace)
                .count();
            let py: usize = reports.iter().map(|r| r.python_token_count).sum();
            let sp: usize = reports.iter().map(|r| r.simpy_token_count).sum();
            writeln!(out, "{:<22}{:>8}", "files", reports.len())?;
            writeln!(out, "{:<22}{:>8}", "ast_equal", reports.len() - failed)?;
            writeln!(out, "{:<22}{:>8}", "text_equal (no ws)", text_eq)?;
            writeln!(out, "{:<22}{:>8}", "python lexer tokens", py)?;
            writeln!(out, "{:<22}{:>8}", "simpy lexer tokens", sp)?;
        }
    }
    Ok(if failed == 0 { Outcome::Ok } else { Outcome::Failed })
}

fn vocabs(args: &VocabArgs, default: &[&str]) -> Result<Vec<BpeVocab>> {
    let mut out = Vec::new();
    let bundled: Vec<&str> = if args.bundled.is_empty() && args.dirs.is_empty() {
        default.to_vec()
    } else {
        args.bundled.iter().map(String::as_str).collect()
    };
    for name in bundled {
        out.push(bundled_vocab(name.parse().map_err(CliError::Usage)?));
    }
    let pretok = args.pretokenizer.parse().map_err(CliError::Usage)?;
    for dir in &args.dirs {
        out.push(load_vocab(
            &dir.join("vocab.json"),
            &dir.join("merges.txt"),
            pretok,
        )?);
    }
    Ok(out)
}

#[derive(Serialize)]
struct TokenRow<'a> {
    vocab: &'a str,
    file_id: &'a str,
    python_tokens: usize,
    simpy_tokens: usize,
    error: Option<&'a str>,
}

fn tokens(table: &GrammarTokenTable, path: &Path, args: &VocabArgs, format: Format) -> Result<Outcome> {
    let sources = load_sources(path)?;
    let reports = vocabs(args, &["web", "code"])?
        .iter()
        .map(|v| compare_sources(&sources, v, table))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    for r in &reports {
        if r.failed > 0 {
            eprintln!(
                "warning: {} files failed to convert and are excluded ({})",
                r.failed, r.vocab
            );
        }
    }
    match format {
        Format::Json => json_line(&reports)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout().lock());
            for r in &reports {
                for f in &r.rows {
                    w.serialize(TokenRow {
                        vocab: &r.vocab,
                        file_id: &f.file_id,
                        python_tokens: f.python_tokens,
                        simpy_tokens: f.simpy_tokens,
                        error: f.error.as_deref(),
                    })?;
                }
            }
            w.flush()?;
        }
        Format::Table => {
            let mut out = std::io::stdout().lock();
            writeln!(
                out,
                "{:<12}{:>7}{:>15}{:>14}{:>11}",
                "vocab", "files", "python_tokens", "simpy_tokens", "reduction"
            )?;
            for r in &reports {
                writeln!(
                    out,
                    "{:<12}{:>7}{:>15}{:>14}{:>10.1}%",
                    r.vocab, r.files, r.python_tokens, r.simpy_tokens, r.reduction_percent
                )?;
            }
        }
    }
    Ok(Outcome::Ok)
}

fn bench(
    table: &GrammarTokenTable,
    path: &Path,
    args: &VocabArgs,
    reps: usize,
    format: Format,
) -> Result<Outcome> {
    let sources = load_sources(path)?;
    let vocab = vocabs(args, &["code"])?
        .into_iter()
        .next()
        .expect("at least one vocab");
    let convert = bench_convert_sources(&sources, &vocab, table, reps)?;
    let tokenize = bench_tokenize_sources(&sources, &vocab, reps)?;
    let ratio = conversion_ratio(&convert, &tokenize);
    if convert.excluded > 0 {
        eprintln!(
            "warning: {} files failed to convert and are excluded",
            convert.excluded
        );
    }
    match format {
        Format::Csv => write_latency_csv(&mut std::io::stdout().lock(), &convert, Some(&tokenize))?,
        Format::Json => json_line(&serde_json::json!({
            "convert": convert,
            "tokenize": tokenize,
            "conversion_over_tokenize": ratio,
        }))?,
        Format::Table => {
            let mut out = std::io::stdout().lock();
            let m = &convert.machine;
            writeln!(
                out,
                "{} {} x{} {} (vocab {}, {} repetitions, optimized build: {})",
                m.os,
                m.arch,
                m.cpus,
                m.cpu_model.as_deref().unwrap_or(""),
                convert.vocab,
                convert.repetitions,
                m.optimized
            )?;
            writeln!(
                out,
                "{:<13}{:>6}{:>12}{:>12}{:>12}{:>12}{:>12}{:>8}",
                "bucket", "files", "py>simpy ms", "p95", "simpy>py ms", "p95", "tokenize ms", "ratio"
            )?;
            for ((b, t), r) in convert.buckets.iter().zip(&tokenize.buckets).zip(&ratio) {
                writeln!(
                    out,
                    "{:<13}{:>6}{:>12.3}{:>12.3}{:>12.3}{:>12.3}{:>12.3}{:>8}",
                    b.bucket,
                    b.files,
                    b.py_to_simpy.mean_ms,
                    b.py_to_simpy.p95_ms,
                    b.simpy_to_py.mean_ms,
                    b.simpy_to_py.p95_ms,
                    t.tokenize.mean_ms,
                    r.map_or("-".to_string(), |r| format!("{r:.2}"))
                )?;
            }
        }
    }
    Ok(Outcome::Ok)
}

fn fuzz(table: &GrammarTokenTable, seed: u64, cases: usize, format: Format) -> Result<Outcome> {
    let summary = fuzz_roundtrip_table(seed, cases, table);
    match format {
        Format::Json => json_line(&summary)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout().lock());
            for c in &summary.counterexamples {
                w.serialize((
                    c.case,
                    c.case_seed,
                    &c.reason,
                    c.original_size,
                    c.shrunk_size,
                    &c.python,
                ))?;
            }
            w.flush()?;
        }
        Format::Table => {
            let mut out = std::io::stdout().lock();
            for c in &summary.counterexamples {
                writeln!(out, "case {} (seed {}): {}", c.case, c.case_seed, c.reason)?;
                writeln!(out, "  size {} -> {}", c.original_size, c.shrunk_size)?;
                if let Some(py) = &c.python {
                    for line in py.lines() {
                        writeln!(out, "  | {line}")?;
                    }
                }
            }
            let (s, p) = (summary.simpy_stats, summary.python_stats);
            writeln!(
                out,
                "seed {} cases {} failures {}",
                summary.seed, summary.cases, summary.failures
            )?;
            writeln!(
                out,
                "simpy parser:  max lookahead {}, backtracks {}, ambiguities {}",
                s.max_lookahead, s.backtracks, s.ambiguities
            )?;
            writeln!(
                out,
                "python parser: max lookahead {}, backtracks {}, ambiguities {}",
                p.max_lookahead, p.backtracks, p.ambiguities
            )?;
        }
    }
    Ok(if summary.passed() {
        Outcome::Ok
    } else {
        Outcome::Failed
    })
}

fn serve(
    table: GrammarTokenTable,
    listen: std::net::SocketAddr,
    upstream: Option<String>,
    stub_mode: Option<String>,
) -> Result<Outcome> {
    let upstream = match (upstream, stub_mode) {
        (_, Some(mode)) => Upstream::Stub(mode.parse::<StubMode>().map_err(CliError::Usage)?),
        (Some(url), None) => Upstream::Http(url),
        (None, None) => return Err(CliError::Usage("give --upstream URL or --stub-mode".into())),
    };
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()),
        )
        .with_writer(std::io::stderr)
        .init();
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(simpy_gateway::serve(GatewayConfig {
        listen,
        upstream,
        table,
    }))?;
    Ok(Outcome::Ok)
}
