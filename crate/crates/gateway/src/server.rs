//! HTTP service: gate in, call upstream, gate out.

use std::collections::VecDeque;
use std::net::SocketAddr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use axum::extract::State;
use axum::http::{HeaderMap, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Serialize;
use serde_json::{json, Map, Value};
use simpy_core::GrammarTokenTable;

use crate::gate::{gate_inbound, gate_outbound, ChatMessage, ChatRequest, ChatResponse, Choice};

pub const WARNING_HEADER: &str = "x-dualcode-warning";
pub const GATE_IN_HEADER: &str = "x-dualcode-gate-in-us";
pub const GATE_OUT_HEADER: &str = "x-dualcode-gate-out-us";
const LATENCY_WINDOW: usize = 4096;

/// Offline upstreams for tests and demos.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StubMode {
    /// Replies with the last message's (already gated) content.
    Echo,
    /// Replies with fixed text.
    Fixed(String),
}

impl std::str::FromStr for StubMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "echo" => Ok(Self::Echo),
            "pass" => Ok(Self::Fixed("```simpy\n<pass_stmt>\n```".to_string())),
            _ => s
                .strip_prefix("fixed:")
                .map(|t| Self::Fixed(t.replace("\\n", "\n")))
                .ok_or_else(|| format!("unknown stub mode {s:?} (expected echo, pass or fixed:TEXT)")),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Upstream {
    /// Base URL; requests go to `{base}/v1/chat/completions`.
    Http(String),
    Stub(StubMode),
}

#[derive(Debug, Clone)]
pub struct GatewayConfig {
    pub listen: SocketAddr,
    pub upstream: Upstream,
    pub table: GrammarTokenTable,
}

#[derive(Debug, thiserror::Error)]
pub enum GatewayError {
    #[error("cannot listen on {addr}: {source}")]
    Bind {
        addr: SocketAddr,
        source: std::io::Error,
    },
    #[error("server stopped: {0}")]
    Serve(std::io::Error),
}

#[derive(Default)]
struct Metrics {
    requests: AtomicU64,
    gate_in: Mutex<VecDeque<u64>>,
    gate_out: Mutex<VecDeque<u64>>,
}

fn record(window: &Mutex<VecDeque<u64>>, us: u64) {
    let mut w = window.lock().unwrap_or_else(|e| e.into_inner());
    if w.len() == LATENCY_WINDOW {
        w.pop_front();
    }
    w.push_back(us);
}

fn percentile(window: &Mutex<VecDeque<u64>>, q: f64) -> u64 {
    let mut v: Vec<u64> = window
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .iter()
        .copied()
        .collect();
    if v.is_empty() {
        return 0;
    }
    v.sort_unstable();
    let idx = ((v.len() as f64 * q).ceil() as usize).clamp(1, v.len()) - 1;
    v[idx]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct MetricsSnapshot {
    pub requests: u64,
    pub gate_in_us_p50: u64,
    pub gate_in_us_p99: u64,
    pub gate_out_us_p50: u64,
    pub gate_out_us_p99: u64,
}

struct AppState {
    upstream: Upstream,
    table: GrammarTokenTable,
    client: reqwest::Client,
    metrics: Metrics,
}

pub fn router(config: GatewayConfig) -> Router {
    let state = Arc::new(AppState {
        upstream: config.upstream,
        table: config.table,
        client: reqwest::Client::new(),
        metrics: Metrics::default(),
    });
    Router::new()
        .route("/v1/chat/completions", post(chat))
        .route("/metrics", get(metrics))
        .route("/healthz", get(|| async { "ok" }))
        .with_state(state)
}

async fn metrics(State(state): State<Arc<AppState>>) -> Json<MetricsSnapshot> {
    let m = &state.metrics;
    Json(MetricsSnapshot {
        requests: m.requests.load(Ordering::Relaxed),
        gate_in_us_p50: percentile(&m.gate_in, 0.50),
        gate_in_us_p99: percentile(&m.gate_in, 0.99),
        gate_out_us_p50: percentile(&m.gate_out, 0.50),
        gate_out_us_p99: percentile(&m.gate_out, 0.99),
    })
}

fn stub_reply(mode: &StubMode, request: &ChatRequest) -> ChatResponse {
    let content = match mode {
        StubMode::Echo => request
            .messages
            .last()
            .and_then(|m| m.content.clone())
            .unwrap_or_default(),
        StubMode::Fixed(text) => text.clone(),
    };
    let mut extra = Map::new();
    extra.insert("object".into(), json!("chat.completion"));
    ChatResponse {
        model: request.model.clone(),
        choices: vec![Choice {
            message: ChatMessage::new("assistant", &content),
            extra: [
                ("index".to_string(), json!(0)),
                ("finish_reason".to_string(), json!("stop")),
            ]
            .into_iter()
            .collect(),
        }],
        extra,
    }
}

enum UpstreamReply {
    Ok(ChatResponse),
    /// Non-success or unparseable upstream answer, passed through as is.
    Raw(StatusCode, String),
}

async fn call_upstream(state: &AppState, request: &ChatRequest) -> UpstreamReply {
    let base = match &state.upstream {
        Upstream::Stub(mode) => return UpstreamReply::Ok(stub_reply(mode, request)),
        Upstream::Http(base) => base,
    };
    let url = format!("{}/v1/chat/completions", base.trim_end_matches('/'));
    let resp = match state.client.post(&url).json(request).send().await {
        Ok(r) => r,
        Err(e) => {
            let body = json!({"error": {"message": format!("upstream unreachable: {e}")}});
            return UpstreamReply::Raw(StatusCode::BAD_GATEWAY, body.to_string());
        }
    };
    let status = StatusCode::from_u16(resp.status().as_u16()).unwrap_or(StatusCode::BAD_GATEWAY);
    let body = resp.text().await.unwrap_or_default();
    if !status.is_success() {
        return UpstreamReply::Raw(status, body);
    }
    match serde_json::from_str(&body) {
        Ok(parsed) => UpstreamReply::Ok(parsed),
        Err(_) => UpstreamReply::Raw(status, body),
    }
}

fn header(v: impl ToString) -> HeaderValue {
    HeaderValue::from_str(&v.to_string()).unwrap_or_else(|_| HeaderValue::from_static("invalid"))
}

/// Header values must be visible ASCII.
fn warning_value(warnings: &[String]) -> HeaderValue {
    let text: String = warnings
        .join("; ")
        .chars()
        .map(|c| if c.is_ascii_graphic() || c == ' ' { c } else { '?' })
        .collect();
    header(text)
}

async fn chat(State(state): State<Arc<AppState>>, Json(request): Json<ChatRequest>) -> Response {
    state.metrics.requests.fetch_add(1, Ordering::Relaxed);
    let (gated, inbound) = gate_inbound(&request, &state.table);
    record(&state.metrics.gate_in, inbound.elapsed_us);
    let mut headers = HeaderMap::new();
    headers.insert(GATE_IN_HEADER, header(inbound.elapsed_us));
    let mut warnings = inbound.warnings;

    let response = match call_upstream(&state, &gated).await {
        UpstreamReply::Ok(r) => r,
        UpstreamReply::Raw(status, body) => {
            if !warnings.is_empty() {
                headers.insert(WARNING_HEADER, warning_value(&warnings));
            }
            headers.insert(
                axum::http::header::CONTENT_TYPE,
                HeaderValue::from_static("application/json"),
            );
            return (status, headers, body).into_response();
        }
    };
    let (out, outbound) = gate_outbound(&response, &state.table);
    record(&state.metrics.gate_out, outbound.elapsed_us);
    headers.insert(GATE_OUT_HEADER, header(outbound.elapsed_us));
    warnings.extend(outbound.warnings);
    if !warnings.is_empty() {
        tracing::warn!(count = warnings.len(), "code blocks left unconverted");
        headers.insert(WARNING_HEADER, warning_value(&warnings));
    }
    let mut body = serde_json::to_value(&out).unwrap_or(Value::Null);
    if let Value::Object(map) = &mut body {
        map.insert(
            "dualcode".into(),
            json!({
                "gate_in_us": inbound.elapsed_us,
                "gate_out_us": outbound.elapsed_us,
                "converted_in": inbound.converted,
                "converted_out": outbound.converted,
                "warnings": warnings,
            }),
        );
    }
    (StatusCode::OK, headers, Json(body)).into_response()
}

/// Binds and serves until the process ends.
pub async fn serve(config: GatewayConfig) -> Result<(), GatewayError> {
    let addr = config.listen;
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .map_err(|source| GatewayError::Bind { addr, source })?;
    tracing::info!(%addr, "gateway listening");
    axum::serve(listener, router(config))
        .await
        .map_err(GatewayError::Serve)
}

/// Starts the service on a background task and returns the bound address.
/// Used by tests and the acceptance run; pass port 0 for a free port.
pub async fn spawn(config: GatewayConfig) -> Result<SocketAddr, GatewayError> {
    let addr = config.listen;
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .map_err(|source| GatewayError::Bind { addr, source })?;
    let bound = listener.local_addr().map_err(GatewayError::Serve)?;
    let app = router(config);
    tokio::spawn(async move {
        if let Err(e) = axum::serve(listener, app).await {
            tracing::error!("gateway stopped: {e}");
        }
    });
    Ok(bound)
}
