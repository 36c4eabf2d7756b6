//! BPE checks: worked examples, properties, and differential runs against
//! Python's `regex` module and tiktoken when those are installed.

use std::path::{Path, PathBuf};
use std::process::Command;

use proptest::prelude::*;
use simpy_core::convert::py_to_simpy;
use simpy_core::tokens::*;
use simpy_core::GrammarTokenTable;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn oracle(args: &[&str]) -> Option<serde_json::Value> {
    let script = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/oracle/bpe.py");
    let out = Command::new("python3").arg(script).args(args).output().ok()?;
    if !out.status.success() {
        eprintln!(
            "oracle unavailable: {}",
            String::from_utf8_lossy(&out.stderr).lines().last().unwrap_or("")
        );
        return None;
    }
    serde_json::from_slice(&out.stdout).ok()
}

/// A few corpus files plus text that exercises the split classes.
fn samples(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = simpy_core::corpus::python_files(&root().join("corpus"))
        .unwrap()
        .into_iter()
        .step_by(7)
        .collect();
    let edge = dir.join("edge.txt");
    std::fs::write(
        &edge,
        "I'M here, she'll go. It's 1234567 x\u{2003}y \t\n\n  \r\n  z\n\
         naïve café 東京 ٣٤٥ «ok»?!  'quoted'  can'T\n    \n  end   ",
    )
    .unwrap();
    files.push(edge);
    let train = root().join("data/train/web.txt");
    let slice = dir.join("web.txt");
    let text = std::fs::read_to_string(train).unwrap();
    let cut = text.char_indices().nth(40_000).map_or(text.len(), |(i, _)| i);
    std::fs::write(&slice, &text[..cut]).unwrap();
    files.push(slice);
    files
}

#[test]
fn pretokenizers_match_regex() {
    let dir = tempfile::tempdir().unwrap();
    let files = samples(dir.path());
    let paths: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
    for (name, p) in [("gpt2", Pretokenizer::Gpt2), ("cl100k", Pretokenizer::Cl100k)] {
        let mut args = vec!["split", name];
        args.extend(paths.iter().map(String::as_str));
        let Some(expected) = oracle(&args) else { return };
        for (file, want) in files.iter().zip(expected.as_array().unwrap()) {
            let text = std::fs::read_to_string(file).unwrap();
            let got: Vec<&str> = p.split(&text);
            let want: Vec<&str> = want
                .as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_str().unwrap())
                .collect();
            assert_eq!(got, want, "{name} on {}", file.display());
        }
    }
}

#[test]
fn bundled_vocabs_match_tiktoken() {
    let dir = tempfile::tempdir().unwrap();
    let files = samples(dir.path());
    let paths: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
    for class in VocabClass::ALL {
        let v = bundled_vocab(class);
        let vocab_json = root().join(format!("crates/core/data/vocab/{}/vocab.json", class.name()));
        let pattern = v.pretokenizer().to_string();
        let mut args = vec!["encode", pattern.as_str(), vocab_json.to_str().unwrap()];
        args.extend(paths.iter().map(String::as_str));
        let Some(expected) = oracle(&args) else { return };
        for (file, want) in files.iter().zip(expected.as_array().unwrap()) {
            let text = std::fs::read_to_string(file).unwrap();
            let want: Vec<u32> = want
                .as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_u64().unwrap() as u32)
                .collect();
            assert_eq!(
                tokenize(&v, &text),
                want,
                "{} on {}",
                class.name(),
                file.display()
            );
        }
    }
}

#[test]
fn bundled_vocabs_are_valid() {
    let table = GrammarTokenTable::default_table();
    for class in VocabClass::ALL {
        let v = bundled_vocab(class);
        assert!(v.is_byte_level());
        assert!(v.merge_count() >= 7_500, "{}", v.merge_count());
        assert_eq!(v.len(), 256 + v.merge_count());
        let x = extend_vocab(&v, &table).unwrap();
        assert_eq!(x.len(), v.len() + 78);
        for p in table.placeholders() {
            assert_eq!(tokenize(&x, p).len(), 1, "{p}");
        }
        assert!(tokenize(&v, "<def_stmt>").len() > 1);
        assert_eq!(tokenize(&v, ""), Vec::<u32>::new());
        let id = v.id("Ġthe").or(v.id("self")).unwrap();
        assert_eq!(
            tokenize(&v, v.token(id).unwrap().replace('Ġ', " ").as_str()),
            vec![id]
        );
    }
}

#[test]
fn corpus_reduction_bands() {
    let table = GrammarTokenTable::default_table();
    let corpus = root().join("corpus");
    let web = compare_corpus(&corpus, &bundled_vocab(VocabClass::Web), &table).unwrap();
    let code = compare_corpus(&corpus, &bundled_vocab(VocabClass::Code), &table).unwrap();
    for r in [&web, &code] {
        assert_eq!(r.failed, 0);
        assert!(r.files >= 200);
        let sum_py: u64 = r.rows.iter().map(|f| f.python_tokens as u64).sum();
        assert_eq!(sum_py, r.python_tokens);
        let recomputed = 100.0 * (1.0 - r.simpy_tokens as f64 / r.python_tokens as f64);
        assert!((recomputed - r.reduction_percent).abs() < 0.1);
    }
    assert!(
        (20.0..=40.0).contains(&web.reduction_percent),
        "{}",
        web.reduction_percent
    );
    assert!(
        (5.0..=20.0).contains(&code.reduction_percent),
        "{}",
        code.reduction_percent
    );
}

#[test]
fn one_file_corpus() {
    let table = GrammarTokenTable::default_table();
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("p.py"), "pass\n").unwrap();
    for class in VocabClass::ALL {
        let r = compare_corpus(dir.path(), &bundled_vocab(class), &table).unwrap();
        assert_eq!(r.files, 1);
        assert_eq!(r.simpy_tokens, 1);
        assert!(r.simpy_tokens <= r.python_tokens);
    }
}

/// Optional check against a GPT-2 format vocab named by `SIMPY_EXTERNAL_VOCAB`
/// (a directory holding vocab.json and merges.txt).
#[test]
fn external_vocab_when_present() {
    let Ok(dir) = std::env::var("SIMPY_EXTERNAL_VOCAB") else {
        eprintln!("SIMPY_EXTERNAL_VOCAB not set; skipping");
        return;
    };
    let dir = PathBuf::from(dir);
    let v = load_vocab(
        &dir.join("vocab.json"),
        &dir.join("merges.txt"),
        Pretokenizer::Gpt2,
    )
    .unwrap();
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("vocab.json")).unwrap()).unwrap();
    assert_eq!(v.len(), json.as_object().unwrap().len());
    let r = compare_corpus(&root().join("corpus"), &v, &GrammarTokenTable::default_table()).unwrap();
    assert!(
        (20.0..=40.0).contains(&r.reduction_percent),
        "{}",
        r.reduction_percent
    );

    let tmp = tempfile::tempdir().unwrap();
    let files = samples(tmp.path());
    let vocab_json = dir.join("vocab.json");
    let mut args = vec!["encode", "gpt2", vocab_json.to_str().unwrap()];
    let paths: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
    args.extend(paths.iter().map(String::as_str));
    let Some(expected) = oracle(&args) else { return };
    for (file, want) in files.iter().zip(expected.as_array().unwrap()) {
        let text = std::fs::read_to_string(file).unwrap();
        let want: Vec<u32> = want
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap() as u32)
            .collect();
        assert_eq!(tokenize(&v, &text), want, "{}", file.display());
    }
}

fn code() -> &'static BpeVocab {
    static V: std::sync::OnceLock<BpeVocab> = std::sync::OnceLock::new();
    V.get_or_init(|| bundled_vocab(VocabClass::Code))
}

fn web_extended() -> &'static BpeVocab {
    static V: std::sync::OnceLock<BpeVocab> = std::sync::OnceLock::new();
    V.get_or_init(|| {
        extend_vocab(
            &bundled_vocab(VocabClass::Web),
            &GrammarTokenTable::default_table(),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn detokenize_inverts_tokenize(text in "\\PC{0,80}") {
        prop_assert_eq!(detokenize(code(), &tokenize(code(), &text)), text.clone());
        prop_assert_eq!(detokenize(web_extended(), &tokenize(web_extended(), &text)), text);
    }

    #[test]
    fn simpy_text_roundtrips_through_ids(seed in any::<u64>()) {
        let table = GrammarTokenTable::default_table();
        let m = simpy_core::convert::AstGenerator::new(seed).module();
        let simpy = simpy_core::emit_simpy(&m, &table).unwrap();
        let ids = tokenize(web_extended(), &simpy);
        prop_assert_eq!(&ids, &tokenize(web_extended(), &simpy));
        prop_assert_eq!(detokenize(web_extended(), &ids), simpy);
    }

    #[test]
    fn pretokens_concatenate(text in "[ a-zA-Z0-9'\\n\\t\\r.,(){}:_=+-]{0,60}") {
        for p in [Pretokenizer::Gpt2, Pretokenizer::Cl100k] {
            prop_assert_eq!(p.split(&text).concat(), text.clone());
            prop_assert!(p.split(&text).iter().all(|s| !s.is_empty()));
        }
    }
}

#[test]
fn placeholders_beat_python_spelling() {
    let table = GrammarTokenTable::default_table();
    let x = extend_vocab(code(), &table).unwrap();
    let py = "def f(a):\n    return a\n";
    let simpy = py_to_simpy(py, &table).unwrap();
    assert!(count_tokens(&x, &simpy) < count_tokens(code(), py));
}

/// `SIMPY_EXTERNAL_CL100K_VOCAB` names a GPT-4 class vocab converted to the
/// GPT-2 file format (see tools/tiktoken_to_gpt2.py).
#[test]
fn gpt4_class_merges_paren_and_name() {
    let Ok(dir) = std::env::var("SIMPY_EXTERNAL_CL100K_VOCAB") else {
        eprintln!("SIMPY_EXTERNAL_CL100K_VOCAB not set; skipping");
        return;
    };
    let dir = PathBuf::from(dir);
    let v = load_vocab(
        &dir.join("vocab.json"),
        &dir.join("merges.txt"),
        Pretokenizer::Cl100k,
    )
    .unwrap();
    assert_eq!(count_tokens(&v, "(nums"), 1);
    assert_eq!(count_tokens(&v, "len(nums)"), 3);
}
