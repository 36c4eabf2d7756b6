//! Regression checks over the bundled corpus.

use std::path::{Path, PathBuf};

use simpy_core::convert::{py_to_simpy, roundtrip_check, simpy_to_py, strip_whitespace};
use simpy_core::GrammarTokenTable;

fn corpus(sub: &str, ext: &str) -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(sub);
    let mut out: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == ext))
        .collect();
    out.sort();
    out
}

#[test]
fn golden_simpy_is_stable() {
    let t = GrammarTokenTable::default_table();
    let files = corpus("golden", "py");
    assert_eq!(files.len(), 20);
    for p in files {
        let src = std::fs::read_to_string(&p).unwrap();
        let want = std::fs::read_to_string(p.with_extension("simpy")).unwrap();
        assert_eq!(py_to_simpy(&src, &t).unwrap(), want, "{}", p.display());
    }
}

#[test]
fn golden_text_survives_roundtrip() {
    let t = GrammarTokenTable::default_table();
    for p in corpus("golden", "py") {
        let src = std::fs::read_to_string(&p).unwrap();
        let back = simpy_to_py(&py_to_simpy(&src, &t).unwrap(), &t).unwrap();
        assert_eq!(strip_whitespace(&src), strip_whitespace(&back), "{}", p.display());
        assert!(strip_whitespace(&src).is_some());
    }
}

#[test]
fn every_corpus_file_roundtrips() {
    let t = GrammarTokenTable::default_table();
    let mut n = 0;
    for sub in ["stdlib", "behavior", "golden"] {
        for p in corpus(sub, "py") {
            let src = std::fs::read_to_string(&p).unwrap();
            let r = roundtrip_check(&p.display().to_string(), &src, &t);
            assert!(r.ast_equal, "{}: {:?} {:?}", r.file_id, r.failure_stage, r.error);
            n += 1;
        }
    }
    assert!(n >= 200, "{n}");
}

#[test]
fn stdlib_corpus_is_large_enough() {
    assert!(corpus("stdlib", "py").len() >= 200);
    assert!(behavior_pairs() >= 30);
}

fn behavior_pairs() -> usize {
    corpus("behavior", "py")
        .iter()
        .filter(|p| p.to_string_lossy().ends_with(".tests.py"))
        .count()
}
