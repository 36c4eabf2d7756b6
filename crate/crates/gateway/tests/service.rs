//! End-to-end runs of the gateway against stub and fake upstreams.

use std::net::SocketAddr;
use std::path::Path;

use axum::http::StatusCode;
use proptest::prelude::*;
use serde_json::{json, Value};
use simpy_core::convert::AstGenerator;
use simpy_core::tokens::{bundled_vocab, count_tokens, VocabClass};
use simpy_core::{ast_equal, emit_python, parse_python, GrammarTokenTable};
use simpy_gateway::*;

fn config(upstream: Upstream) -> GatewayConfig {
    GatewayConfig {
        listen: "127.0.0.1:0".parse().unwrap(),
        upstream,
        table: GrammarTokenTable::default_table(),
    }
}

async fn post(addr: SocketAddr, body: Value) -> reqwest::Response {
    reqwest::Client::new()
        .post(format!("http://{addr}/v1/chat/completions"))
        .json(&body)
        .send()
        .await
        .unwrap()
}

fn request(content: &str) -> Value {
    json!({"model": "stub", "temperature": 0, "messages": [{"role": "user", "content": content}]})
}

fn reply_content(v: &Value) -> String {
    v["choices"][0]["message"]["content"]
        .as_str()
        .unwrap()
        .to_string()
}

/// Text outside python/simpy fences.
fn complement(content: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut pos = 0;
    for s in extract_code_spans(content) {
        out.push(content[pos..s.range.start].to_string());
        pos = s.range.end;
    }
    out.push(content[pos..].to_string());
    out
}

const PROGRAM: &str = "def add(a, b=1):\n    if a >= b:\n        return a + b\n    return None\n";

#[tokio::test]
async fn echo_preserves_code_and_prose() {
    let addr = spawn(config(Upstream::Stub(StubMode::Echo))).await.unwrap();
    let content = format!("Fix this, please:\n\n```python\n{PROGRAM}```\n\nThanks! ```text\nkeep```");
    let resp = post(addr, request(&content)).await;
    assert_eq!(resp.status(), StatusCode::OK);
    assert!(resp.headers().get(WARNING_HEADER).is_none());
    assert!(resp.headers().get(GATE_IN_HEADER).is_some());
    let body: Value = resp.json().await.unwrap();
    let back = reply_content(&body);
    assert_eq!(complement(&back), complement(&content));
    let spans = extract_code_spans(&back);
    assert_eq!(spans.len(), 1);
    assert_eq!(spans[0].lang, "python");
    let code = spans[0].body(&back);
    assert!(ast_equal(
        &parse_python(code).unwrap(),
        &parse_python(PROGRAM).unwrap()
    ));
    assert_eq!(body["dualcode"]["converted_in"], 1);
    assert_eq!(body["dualcode"]["converted_out"], 1);
}

#[tokio::test]
async fn echo_without_code_is_identity() {
    let addr = spawn(config(Upstream::Stub(StubMode::Echo))).await.unwrap();
    let content = "Plain words with `ticks` and ``` unclosed";
    let body: Value = post(addr, request(content)).await.json().await.unwrap();
    assert_eq!(reply_content(&body), content);
}

#[tokio::test]
async fn fixed_simpy_reply_reaches_client_as_python() {
    let addr = spawn(config(Upstream::Stub("pass".parse().unwrap())))
        .await
        .unwrap();
    let body: Value = post(addr, request("anything")).await.json().await.unwrap();
    assert_eq!(reply_content(&body), "```python\npass\n```");
}

#[tokio::test]
async fn broken_python_gets_warning_not_error() {
    let addr = spawn(config(Upstream::Stub(StubMode::Echo))).await.unwrap();
    let content = "```python\ndef broken(:\n```";
    let resp = post(addr, request(content)).await;
    assert_eq!(resp.status(), StatusCode::OK);
    assert!(resp.headers().get(WARNING_HEADER).is_some());
    let body: Value = resp.json().await.unwrap();
    assert_eq!(reply_content(&body), content);
}

#[tokio::test]
async fn bad_simpy_from_model_stays_visible() {
    let addr = spawn(config(Upstream::Stub(StubMode::Fixed(
        "```simpy\n<block_end>\n```".into(),
    ))))
    .await
    .unwrap();
    let resp = post(addr, request("x")).await;
    assert!(resp.headers().get(WARNING_HEADER).is_some());
    let body: Value = resp.json().await.unwrap();
    assert_eq!(reply_content(&body), "```simpy\n<block_end>\n```");
}

#[tokio::test]
async fn upstream_status_passes_through() {
    let fake = axum::Router::new().route(
        "/v1/chat/completions",
        axum::routing::post(|| async { (StatusCode::TOO_MANY_REQUESTS, r#"{"error":"slow down"}"#) }),
    );
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let up = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, fake).await.unwrap() });
    let addr = spawn(config(Upstream::Http(format!("http://{up}"))))
        .await
        .unwrap();
    let resp = post(addr, request("```python\npass\n```")).await;
    assert_eq!(resp.status(), StatusCode::TOO_MANY_REQUESTS);
    assert_eq!(resp.text().await.unwrap(), r#"{"error":"slow down"}"#);
}

#[tokio::test]
async fn http_upstream_sees_simpy() {
    let fake = axum::Router::new().route(
        "/v1/chat/completions",
        axum::routing::post(|axum::Json(req): axum::Json<Value>| async move {
            let seen = req["messages"][0]["content"].as_str().unwrap().to_string();
            axum::Json(json!({
                "model": req["model"],
                "choices": [{"index": 0, "message": {"role": "assistant", "content": seen}}],
                "usage": {"total_tokens": 3}
            }))
        }),
    );
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let up = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, fake).await.unwrap() });
    let addr = spawn(config(Upstream::Http(format!("http://{up}/"))))
        .await
        .unwrap();
    let body: Value = post(addr, request("```python\npass\n```"))
        .await
        .json()
        .await
        .unwrap();
    assert_eq!(reply_content(&body), "```python\npass\n```");
    assert_eq!(body["usage"]["total_tokens"], 3);
}

#[tokio::test]
async fn unreachable_upstream_is_bad_gateway() {
    let addr = spawn(config(Upstream::Http("http://127.0.0.1:9".into())))
        .await
        .unwrap();
    let resp = post(addr, request("hi")).await;
    assert_eq!(resp.status(), StatusCode::BAD_GATEWAY);
}

#[tokio::test]
async fn metrics_count_requests() {
    let addr = spawn(config(Upstream::Stub(StubMode::Echo))).await.unwrap();
    for _ in 0..3 {
        post(addr, request("```python\nx = 1\n```")).await;
    }
    let m: MetricsSnapshot = reqwest::get(format!("http://{addr}/metrics"))
        .await
        .unwrap()
        .json()
        .await
        .unwrap();
    assert_eq!(m.requests, 3);
    assert!(m.gate_in_us_p99 >= m.gate_in_us_p50);
    let ok = reqwest::get(format!("http://{addr}/healthz")).await.unwrap();
    assert_eq!(ok.status(), StatusCode::OK);
}

#[test]
fn gate_latency_for_small_blocks() {
    let table = GrammarTokenTable::default_table();
    let vocab = bundled_vocab(VocabClass::Code);
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut samples = Vec::new();
    for (_, src) in simpy_core::corpus::load_sources(&corpus).unwrap() {
        if count_tokens(&vocab, &src) > 500 {
            continue;
        }
        let content = format!("Here:\n```python\n{src}```\n");
        let (simpy, _) = gate_text(&content, Direction::Inbound, &table);
        gate_text(&simpy, Direction::Outbound, &table);
        for _ in 0..3 {
            let t = std::time::Instant::now();
            let (s, _) = gate_text(&content, Direction::Inbound, &table);
            samples.push(t.elapsed().as_secs_f64() * 1e3);
            let t = std::time::Instant::now();
            gate_text(&s, Direction::Outbound, &table);
            samples.push(t.elapsed().as_secs_f64() * 1e3);
        }
    }
    samples.sort_by(f64::total_cmp);
    let p95 = samples[samples.len() * 95 / 100];
    assert!(p95 <= 5.0, "p95 {p95:.3} ms");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn inbound_is_idempotent_and_keeps_prose(seed in any::<u64>(), before in "[a-z \\n`]{0,30}", after in "[a-z \\n]{0,30}") {
        let table = GrammarTokenTable::default_table();
        let py = emit_python(&AstGenerator::new(seed).module()).unwrap();
        let content = format!("{before}\n```python\n{py}```\n{after}");
        let (once, _) = gate_text(&content, Direction::Inbound, &table);
        let (twice, _) = gate_text(&once, Direction::Inbound, &table);
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(complement(&once), complement(&content));
        let (back, rep) = gate_text(&once, Direction::Outbound, &table);
        prop_assert!(rep.warnings.is_empty());
        prop_assert_eq!(complement(&back), complement(&content));
        let orig = extract_code_spans(&content);
        let new = extract_code_spans(&back);
        prop_assert_eq!(orig.len(), new.len());
        for (a, b) in orig.iter().zip(&new) {
            if a.lang == "python" {
                let pa = parse_python(a.body(&content)).unwrap();
                prop_assert!(ast_equal(&pa, &parse_python(b.body(&back)).unwrap()));
            }
        }
    }
}
