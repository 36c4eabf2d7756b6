//! Input and output gates over chat-completion messages.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use simpy_core::convert::{py_to_simpy, simpy_to_py};
use simpy_core::GrammarTokenTable;

use crate::spans::extract_code_spans;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: String,
    #[serde(default)]
    pub content: Option<String>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl ChatMessage {
    pub fn new(role: &str, content: &str) -> Self {
        Self {
            role: role.to_string(),
            content: Some(content.to_string()),
            extra: Map::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatRequest {
    #[serde(default)]
    pub model: String,
    pub messages: Vec<ChatMessage>,
    /// Passed upstream untouched.
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Choice {
    pub message: ChatMessage,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatResponse {
    #[serde(default)]
    pub model: String,
    pub choices: Vec<Choice>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// python fences become simpy fences
    Inbound,
    /// simpy fences become python fences
    Outbound,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct GateReport {
    pub converted: usize,
    pub warnings: Vec<String>,
    pub elapsed_us: u64,
}

impl GateReport {
    fn absorb(&mut self, other: GateReport) {
        self.converted += other.converted;
        self.warnings.extend(other.warnings);
    }
}

/// Rewrites the fences of one direction in `content`; everything outside
/// those fences is copied byte for byte. A block that fails to convert is
/// left as it was and reported.
pub fn gate_text(content: &str, direction: Direction, table: &GrammarTokenTable) -> (String, GateReport) {
    let (from, to) = match direction {
        Direction::Inbound => ("python", "simpy"),
        Direction::Outbound => ("simpy", "python"),
    };
    let mut out = String::with_capacity(content.len());
    let mut report = GateReport::default();
    let mut pos = 0;
    for span in extract_code_spans(content).into_iter().filter(|s| s.lang == from) {
        let body = span.body(content);
        let converted = match direction {
            Direction::Inbound => py_to_simpy(body, table).map(|s| if s.is_empty() { s } else { s + "\n" }),
            Direction::Outbound => simpy_to_py(body, table),
        };
        match converted {
            Ok(text) => {
                out.push_str(&content[pos..span.range.start]);
                out.push_str("```");
                out.push_str(to);
                out.push('\n');
                out.push_str(&text);
                out.push_str("```");
                pos = span.range.end;
                report.converted += 1;
            }
            Err(e) => report.warnings.push(format!(
                "{from} block at byte {} left unconverted: {e}",
                span.range.start
            )),
        }
    }
    out.push_str(&content[pos..]);
    (out, report)
}

fn gate_messages<'a>(
    messages: impl Iterator<Item = &'a mut ChatMessage>,
    direction: Direction,
    table: &GrammarTokenTable,
) -> GateReport {
    let started = Instant::now();
    let mut report = GateReport::default();
    for m in messages {
        if let Some(content) = &m.content {
            let (text, r) = gate_text(content, direction, table);
            m.content = Some(text);
            report.absorb(r);
        }
    }
    report.elapsed_us = started.elapsed().as_micros() as u64;
    report
}

/// Converts python fences in every message to SimPy. Never fails.
pub fn gate_inbound(request: &ChatRequest, table: &GrammarTokenTable) -> (ChatRequest, GateReport) {
    let mut out = request.clone();
    let report = gate_messages(out.messages.iter_mut(), Direction::Inbound, table);
    (out, report)
}

/// Converts simpy fences in every choice back to Python. Never fails.
pub fn gate_outbound(response: &ChatResponse, table: &GrammarTokenTable) -> (ChatResponse, GateReport) {
    let mut out = response.clone();
    let report = gate_messages(
        out.choices.iter_mut().map(|c| &mut c.message),
        Direction::Outbound,
        table,
    );
    (out, report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> GrammarTokenTable {
        GrammarTokenTable::default_table()
    }

    fn request(content: &str) -> ChatRequest {
        ChatRequest {
            model: "m".into(),
            messages: vec![ChatMessage::new("user", content)],
            extra: Map::new(),
        }
    }

    #[test]
    fn no_code_is_untouched() {
        let r = request("just words, `inline` too");
        let (out, rep) = gate_inbound(&r, &table());
        assert_eq!(out, r);
        assert_eq!(rep.converted, 0);
    }

    #[test]
    fn pass_block() {
        let (out, rep) = gate_inbound(&request("```python\npass\n```"), &table());
        assert_eq!(
            out.messages[0].content.as_deref(),
            Some("```simpy\n<pass_stmt>\n```")
        );
        assert_eq!(rep.converted, 1);
    }

    #[test]
    fn broken_block_is_kept_with_warning() {
        let r = request("a\n```python\nx = = 1\n```\nb");
        let (out, rep) = gate_inbound(&r, &table());
        assert_eq!(out, r);
        assert_eq!(rep.warnings.len(), 1);
    }

    #[test]
    fn outbound_mirrors_inbound() {
        let t = table();
        let (text, rep) = gate_text("```simpy\n<pass_stmt>\n```", Direction::Outbound, &t);
        assert_eq!(text, "```python\npass\n```");
        assert_eq!(rep.converted, 1);
        let (same, rep) = gate_text("no code", Direction::Outbound, &t);
        assert_eq!((same.as_str(), rep.converted), ("no code", 0));
        let bad = "```simpy\n<block_end>\n```";
        let (kept, rep) = gate_text(bad, Direction::Outbound, &t);
        assert_eq!(kept, bad);
        assert_eq!(rep.warnings.len(), 1);
    }

    #[test]
    fn passthrough_fields_survive() {
        let json =
            r#"{"model":"m","temperature":0.2,"messages":[{"role":"user","content":"hi","name":"u"}]}"#;
        let r: ChatRequest = serde_json::from_str(json).unwrap();
        let (out, _) = gate_inbound(&r, &table());
        let back: Value = serde_json::to_value(&out).unwrap();
        assert_eq!(back, serde_json::from_str::<Value>(json).unwrap());
    }
}
