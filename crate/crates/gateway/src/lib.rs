//! DualCode gateway. Python code fences in chat messages are converted to
//! SimPy before they reach the model, and SimPy fences in its replies are
//! converted back. Text outside fences passes through unchanged.

mod gate;
mod server;
mod spans;

pub use gate::{
    gate_inbound, gate_outbound, gate_text, ChatMessage, ChatRequest, ChatResponse, Choice, Direction,
    GateReport,
};
pub use server::{
    router, serve, spawn, GatewayConfig, GatewayError, MetricsSnapshot, StubMode, Upstream, GATE_IN_HEADER,
    GATE_OUT_HEADER, WARNING_HEADER,
};
pub use spans::{extract_code_spans, CodeSpan, TAGS};
