//! Conversion and tokenization latency, bucketed by Python token count.

use std::hint::black_box;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::convert::{py_to_simpy, simpy_to_py};
use crate::corpus::{load_sources, CorpusError};
use crate::grammar::GrammarTokenTable;
use crate::tokens::{count_tokens, tokenize, BpeVocab};

/// Lower bounds of the token-count buckets; each runs to the next bound.
pub const BUCKET_BOUNDS: [usize; 5] = [0, 100, 500, 2000, 5000];
pub const MIN_REPETITIONS: usize = 3;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("need at least {MIN_REPETITIONS} repetitions, got {0}")]
    Repetitions(usize),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

pub fn bucket_of(tokens: usize) -> usize {
    BUCKET_BOUNDS.iter().rposition(|&lo| tokens >= lo).unwrap_or(0)
}

pub fn bucket_label(i: usize) -> String {
    match BUCKET_BOUNDS.get(i + 1) {
        Some(hi) => format!("[{},{})", BUCKET_BOUNDS[i], hi),
        None => format!("[{},inf)", BUCKET_BOUNDS[i]),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Machine {
    pub os: String,
    pub arch: String,
    pub cpus: usize,
    pub cpu_model: Option<String>,
    pub optimized: bool,
}

impl Machine {
    pub fn detect() -> Self {
        let cpu_model = std::fs::read_to_string("/proc/cpuinfo").ok().and_then(|s| {
            s.lines()
                .find(|l| l.starts_with("model name"))
                .and_then(|l| l.split(':').nth(1))
                .map(|m| m.trim().to_string())
        });
        Self {
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            cpus: std::thread::available_parallelism().map_or(1, |n| n.get()),
            cpu_model,
            optimized: !cfg!(debug_assertions),
        }
    }
}

/// Mean and 95th percentile in milliseconds.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Timing {
    pub mean_ms: f64,
    pub p95_ms: f64,
}

impl Timing {
    fn of(samples_ms: &mut [f64]) -> Self {
        if samples_ms.is_empty() {
            return Self::default();
        }
        samples_ms.sort_by(f64::total_cmp);
        let idx = ((samples_ms.len() as f64 * 0.95).ceil() as usize).clamp(1, samples_ms.len()) - 1;
        Self {
            mean_ms: samples_ms.iter().sum::<f64>() / samples_ms.len() as f64,
            p95_ms: samples_ms[idx],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvertBucket {
    pub bucket: String,
    pub files: usize,
    pub py_to_simpy: Timing,
    pub simpy_to_py: Timing,
    pub round_trip: Timing,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatencyReport {
    pub machine: Machine,
    pub vocab: String,
    pub repetitions: usize,
    pub files: usize,
    pub excluded: usize,
    pub buckets: Vec<ConvertBucket>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TokenizeBucket {
    pub bucket: String,
    pub files: usize,
    pub tokenize: Timing,
}

#[derive(Debug, Clone, Serialize)]
pub struct TokenizeReport {
    pub machine: Machine,
    pub vocab: String,
    pub repetitions: usize,
    pub files: usize,
    pub buckets: Vec<TokenizeBucket>,
}

/// Median of `repetitions` timed runs after one discarded warm-up run.
fn median_ms(repetitions: usize, mut f: impl FnMut()) -> f64 {
    f();
    let mut runs: Vec<f64> = (0..repetitions)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed().as_secs_f64() * 1e3
        })
        .collect();
    runs.sort_by(f64::total_cmp);
    runs[runs.len() / 2]
}

pub fn bench_convert_sources(
    sources: &[(String, String)],
    vocab: &BpeVocab,
    table: &GrammarTokenTable,
    repetitions: usize,
) -> Result<LatencyReport, BenchError> {
    if repetitions < MIN_REPETITIONS {
        return Err(BenchError::Repetitions(repetitions));
    }
    let n = BUCKET_BOUNDS.len();
    let mut forward = vec![Vec::new(); n];
    let mut backward = vec![Vec::new(); n];
    let mut both = vec![Vec::new(); n];
    let mut excluded = 0;
    for (_, source) in sources {
        let Ok(simpy) = py_to_simpy(source, table) else {
            excluded += 1;
            continue;
        };
        if simpy_to_py(&simpy, table).is_err() {
            excluded += 1;
            continue;
        }
        let b = bucket_of(count_tokens(vocab, source));
        let f = median_ms(repetitions, || {
            black_box(py_to_simpy(black_box(source), table).ok());
        });
        let r = median_ms(repetitions, || {
            black_box(simpy_to_py(black_box(&simpy), table).ok());
        });
        forward[b].push(f);
        backward[b].push(r);
        both[b].push(f + r);
    }
    let buckets = (0..n)
        .map(|i| ConvertBucket {
            bucket: bucket_label(i),
            files: forward[i].len(),
            py_to_simpy: Timing::of(&mut forward[i]),
            simpy_to_py: Timing::of(&mut backward[i]),
            round_trip: Timing::of(&mut both[i]),
        })
        .collect();
    Ok(LatencyReport {
        machine: Machine::detect(),
        vocab: vocab.name().to_string(),
        repetitions,
        files: sources.len() - excluded,
        excluded,
        buckets,
    })
}

pub fn bench_convert(
    corpus: &Path,
    vocab: &BpeVocab,
    table: &GrammarTokenTable,
    repetitions: usize,
) -> Result<LatencyReport, BenchError> {
    let sources = load_sources(corpus)?;
    bench_convert_sources(&sources, vocab, table, repetitions)
}

pub fn bench_tokenize_sources(
    sources: &[(String, String)],
    vocab: &BpeVocab,
    repetitions: usize,
) -> Result<TokenizeReport, BenchError> {
    if repetitions < MIN_REPETITIONS {
        return Err(BenchError::Repetitions(repetitions));
    }
    let mut samples = vec![Vec::new(); BUCKET_BOUNDS.len()];
    for (_, source) in sources {
        let b = bucket_of(count_tokens(vocab, source));
        samples[b].push(median_ms(repetitions, || {
            black_box(tokenize(vocab, black_box(source)));
        }));
    }
    let buckets = samples
        .iter_mut()
        .enumerate()
        .map(|(i, s)| TokenizeBucket {
            bucket: bucket_label(i),
            files: s.len(),
            tokenize: Timing::of(s),
        })
        .collect();
    Ok(TokenizeReport {
        machine: Machine::detect(),
        vocab: vocab.name().to_string(),
        repetitions,
        files: sources.len(),
        buckets,
    })
}

pub fn bench_tokenize(
    corpus: &Path,
    vocab: &BpeVocab,
    repetitions: usize,
) -> Result<TokenizeReport, BenchError> {
    bench_tokenize_sources(&load_sources(corpus)?, vocab, repetitions)
}

/// Round-trip conversion time over tokenization time, per bucket; `None`
/// where either side has no files.
pub fn conversion_ratio(convert: &LatencyReport, tokenize: &TokenizeReport) -> Vec<Option<f64>> {
    convert
        .buckets
        .iter()
        .zip(&tokenize.buckets)
        .map(|(c, t)| {
            (c.files > 0 && t.files > 0 && t.tokenize.mean_ms > 0.0)
                .then(|| c.round_trip.mean_ms / t.tokenize.mean_ms)
        })
        .collect()
}

/// Non-empty bucket means (one-way, the slower direction) never drop by
/// more than `slack` from one bucket to the next.
pub fn monotone_with_slack(report: &LatencyReport, slack: f64) -> bool {
    let means: Vec<f64> = report
        .buckets
        .iter()
        .filter(|b| b.files > 0)
        .map(|b| b.py_to_simpy.mean_ms.max(b.simpy_to_py.mean_ms))
        .collect();
    means.windows(2).all(|w| w[1] >= w[0] * (1.0 - slack))
}

#[derive(Serialize)]
struct CsvRow<'a> {
    bucket: &'a str,
    files: usize,
    py_to_simpy_mean_ms: f64,
    py_to_simpy_p95_ms: f64,
    simpy_to_py_mean_ms: f64,
    simpy_to_py_p95_ms: f64,
    round_trip_mean_ms: f64,
    round_trip_p95_ms: f64,
    tokenize_mean_ms: Option<f64>,
    conversion_over_tokenize: Option<f64>,
}

/// One CSV row per bucket; the machine description goes in `#` header lines.
pub fn write_latency_csv(
    out: &mut dyn std::io::Write,
    convert: &LatencyReport,
    tokenize: Option<&TokenizeReport>,
) -> Result<(), csv::Error> {
    let m = &convert.machine;
    writeln!(
        out,
        "# os={} arch={} cpus={} cpu={} optimized={} vocab={} repetitions={} files={} excluded={}",
        m.os,
        m.arch,
        m.cpus,
        m.cpu_model.as_deref().unwrap_or("unknown"),
        m.optimized,
        convert.vocab,
        convert.repetitions,
        convert.files,
        convert.excluded
    )?;
    let ratios = tokenize.map(|t| conversion_ratio(convert, t));
    let mut w = csv::Writer::from_writer(out);
    for (i, b) in convert.buckets.iter().enumerate() {
        w.serialize(CsvRow {
            bucket: &b.bucket,
            files: b.files,
            py_to_simpy_mean_ms: b.py_to_simpy.mean_ms,
            py_to_simpy_p95_ms: b.py_to_simpy.p95_ms,
            simpy_to_py_mean_ms: b.simpy_to_py.mean_ms,
            simpy_to_py_p95_ms: b.simpy_to_py.p95_ms,
            round_trip_mean_ms: b.round_trip.mean_ms,
            round_trip_p95_ms: b.round_trip.p95_ms,
            tokenize_mean_ms: tokenize.map(|t| t.buckets[i].tokenize.mean_ms),
            conversion_over_tokenize: ratios.as_ref().and_then(|r| r[i]),
        })?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tokens::{bundled_vocab, VocabClass};

    #[test]
    fn buckets_partition_counts() {
        assert_eq!(bucket_of(0), 0);
        assert_eq!(bucket_of(99), 0);
        assert_eq!(bucket_of(100), 1);
        assert_eq!(bucket_of(499), 1);
        assert_eq!(bucket_of(500), 2);
        assert_eq!(bucket_of(4999), 3);
        assert_eq!(bucket_of(1_000_000), 4);
        assert_eq!(bucket_label(4), "[5000,inf)");
    }

    #[test]
    fn empty_corpus_gives_empty_report() {
        let v = bundled_vocab(VocabClass::Code);
        let t = GrammarTokenTable::default_table();
        let r = bench_convert_sources(&[], &v, &t, 3).unwrap();
        assert_eq!(r.files, 0);
        assert!(r
            .buckets
            .iter()
            .all(|b| b.files == 0 && b.py_to_simpy.mean_ms == 0.0));
        let tr = bench_tokenize_sources(&[], &v, 3).unwrap();
        assert!(tr.buckets.iter().all(|b| b.files == 0));
        assert!(conversion_ratio(&r, &tr).iter().all(Option::is_none));
        assert!(matches!(
            bench_convert_sources(&[], &v, &t, 2),
            Err(BenchError::Repetitions(2))
        ));
    }

    #[test]
    fn small_files_are_timed() {
        let v = bundled_vocab(VocabClass::Code);
        let t = GrammarTokenTable::default_table();
        let src = vec![
            ("a".to_string(), "x = 1\n".to_string()),
            ("b".to_string(), "x = = 1\n".to_string()),
        ];
        let r = bench_convert_sources(&src, &v, &t, 3).unwrap();
        assert_eq!((r.files, r.excluded), (1, 1));
        assert_eq!(r.buckets[0].files, 1);
        assert!(r.buckets[0].round_trip.mean_ms > 0.0);
        let tr = bench_tokenize_sources(&src, &v, 3).unwrap();
        assert!(tr.buckets[0].tokenize.mean_ms > 0.0);
        let mut out = Vec::new();
        write_latency_csv(&mut out, &r, Some(&tr)).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("# os="));
        assert_eq!(text.lines().count(), 1 + 1 + BUCKET_BOUNDS.len());
    }
}
