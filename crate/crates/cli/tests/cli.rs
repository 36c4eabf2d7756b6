//! Runs the `simpy` binary end to end.

use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};
use std::time::Duration;

use simpy_core::{ast_equal, parse_python};

fn simpy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simpy"))
        .args(args)
        .output()
        .expect("spawn simpy")
}

fn corpus(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(sub)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn convert_empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.py");
    std::fs::write(&empty, "").unwrap();
    let o = simpy(&["convert", "--to", "simpy", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
}

#[test]
fn convert_reports_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.py");
    std::fs::write(&bad, "def f(:\n    pass\n").unwrap();
    let o = simpy(&["convert", "--to", "simpy", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.py"));
}

#[test]
fn convert_there_and_back() {
    let dir = tempfile::tempdir().unwrap();
    let src = std::fs::read_to_string(corpus("golden").join("04_functions.py")).unwrap();
    let simpy_path = dir.path().join("f.simpy");
    let py_path = dir.path().join("f.py");
    let input = corpus("golden").join("04_functions.py");
    let o = simpy(&[
        "convert",
        "--to",
        "simpy",
        input.to_str().unwrap(),
        "-o",
        simpy_path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = simpy(&[
        "convert",
        "--to",
        "python",
        simpy_path.to_str().unwrap(),
        "-o",
        py_path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let back = std::fs::read_to_string(py_path).unwrap();
    assert!(ast_equal(
        &parse_python(&src).unwrap(),
        &parse_python(&back).unwrap()
    ));
}

#[test]
fn roundtrip_corpus_passes() {
    let o = simpy(&["roundtrip", corpus("").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("ast_equal"));
}

#[test]
fn roundtrip_flags_unparsable_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("ok.py"), "x = 1\n").unwrap();
    std::fs::write(dir.path().join("bad.py"), "x = = 1\n").unwrap();
    let o = simpy(&["roundtrip", dir.path().to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("bad.py"));
}

#[test]
fn roundtrip_empty_dir_warns() {
    let dir = tempfile::tempdir().unwrap();
    let o = simpy(&["roundtrip", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn export_table_has_every_placeholder() {
    let o = simpy(&["export-table"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let placeholders = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .filter(|l| l.split('\t').nth(3).is_some_and(|s| s.starts_with('<')))
        .count();
    assert_eq!(placeholders, 78);
}

#[test]
fn exported_table_loads_back() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table.tsv");
    let o = simpy(&["export-table", "-o", table.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let input = corpus("golden").join("01_assign.py");
    let a = simpy(&["convert", "--to", "simpy", input.to_str().unwrap()]);
    let b = simpy(&[
        "--table",
        table.to_str().unwrap(),
        "convert",
        "--to",
        "simpy",
        input.to_str().unwrap(),
    ]);
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn fuzz_seed_42() {
    let o = simpy(&["fuzz", "--seed", "42", "-n", "1000", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failures"], 0);
    assert_eq!(v["simpy_stats"]["backtracks"], 0);
}

#[test]
fn tokens_json_has_both_vocabs() {
    let o = simpy(&["tokens", corpus("golden").to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["vocab"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["web", "code"]);
}

#[test]
fn bench_csv_has_five_buckets() {
    let o = simpy(&[
        "bench",
        corpus("golden").to_str().unwrap(),
        "--repetitions",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with('#'));
    assert_eq!(text.lines().count(), 2 + 5);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(simpy(&["nope"]).status.code(), Some(2));
    assert_eq!(simpy(&["serve"]).status.code(), Some(2));
    assert_eq!(
        simpy(&["convert", "--to", "simpy", "/no/such/file.py"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn serve_with_stub() {
    let port = {
        let l = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
        l.local_addr().unwrap().port()
    };
    let listen = format!("127.0.0.1:{port}");
    let mut child = Command::new(env!("CARGO_BIN_EXE_simpy"))
        .args(["serve", "--listen", &listen, "--stub-mode"])
        .env("RUST_LOG", "info")
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut lines = BufReader::new(child.stderr.take().unwrap()).lines();
    assert!(lines.any(|l| l.unwrap().contains("listening")));

    let rt = tokio::runtime::Runtime::new().unwrap();
    let body: serde_json::Value = rt.block_on(async {
        let client = reqwest::Client::builder()
            .timeout(Duration::from_secs(10))
            .build()
            .unwrap();
        client
            .post(format!("http://{listen}/v1/chat/completions"))
            .json(&serde_json::json!({
                "model": "stub",
                "messages": [{"role": "user", "content": "```python\nx = 1\n```\n"}]
            }))
            .send()
            .await
            .unwrap()
            .json()
            .await
            .unwrap()
    });
    child.kill().unwrap();
    child.wait().unwrap();
    let content = body["choices"][0]["message"]["content"].as_str().unwrap();
    assert!(content.starts_with("```python\n"));
    assert_eq!(body["dualcode"]["converted_in"], 1);
}
