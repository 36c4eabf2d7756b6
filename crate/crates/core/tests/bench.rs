//! Latency over the bundled corpus.

use std::path::Path;

use simpy_core::bench::*;
use simpy_core::tokens::{bundled_vocab, VocabClass};
use simpy_core::GrammarTokenTable;

#[test]
fn corpus_latency() {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let vocab = bundled_vocab(VocabClass::Code);
    let table = GrammarTokenTable::default_table();
    let r = bench_convert(&corpus, &vocab, &table, 3).unwrap();
    let t = bench_tokenize(&corpus, &vocab, 3).unwrap();
    for (b, ratio) in r.buckets.iter().zip(conversion_ratio(&r, &t)) {
        eprintln!(
            "{:12} files={:4} fwd={:.3}ms back={:.3}ms p95={:.3}ms ratio={:?}",
            b.bucket, b.files, b.py_to_simpy.mean_ms, b.simpy_to_py.mean_ms, b.round_trip.p95_ms, ratio
        );
    }
    assert_eq!(r.excluded, 0);
    assert_eq!(r.buckets.iter().map(|b| b.files).sum::<usize>(), r.files);
    assert!(r.buckets[0].files > 0 && r.buckets[1].files > 0);
    let one_way = |b: &ConvertBucket| b.py_to_simpy.mean_ms.max(b.simpy_to_py.mean_ms);
    assert!(one_way(&r.buckets[0]) <= 1.0);
    assert!(one_way(&r.buckets[1]) <= 5.0);
    assert!(monotone_with_slack(&r, 0.2));
}

#[test]
fn repeated_runs_are_stable() {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let sources = simpy_core::corpus::load_sources(&corpus).unwrap();
    let vocab = bundled_vocab(VocabClass::Code);
    let table = GrammarTokenTable::default_table();
    let a = bench_convert_sources(&sources, &vocab, &table, 5).unwrap();
    let b = bench_convert_sources(&sources, &vocab, &table, 5).unwrap();
    // Only buckets with enough files to average out scheduler noise.
    for (x, y) in a.buckets.iter().zip(&b.buckets).filter(|(x, _)| x.files >= 20) {
        let (p, q) = (x.round_trip.mean_ms, y.round_trip.mean_ms);
        assert!((p - q).abs() / p.max(q) < 0.3, "{}: {p:.3} vs {q:.3}", x.bucket);
    }
}
