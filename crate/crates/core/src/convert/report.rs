//! Per-file round-trip verification and its CSV / JSON-lines export.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::ast::ast_equal;
use crate::grammar::GrammarTokenTable;
use crate::python::{lex_python, python_token_count, PyTokenKind};
use crate::simpy::simpy_token_count;
use crate::syntax::fstring;
use crate::{emit_python, emit_simpy, parse_python, parse_simpy};

/// Where a round trip stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    ParsePython,
    EmitSimpy,
    ParseSimpy,
    EmitPython,
    ReparsePython,
}

/// One row per file. Durations are wall-clock microseconds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundTripReport {
    pub file_id: String,
    pub ast_equal: bool,
    pub text_equal_ignoring_whitespace: bool,
    pub python_token_count: usize,
    pub simpy_token_count: usize,
    pub py_to_simpy_us: u64,
    pub simpy_to_py_us: u64,
    pub failure_stage: Option<Stage>,
    pub error: Option<String>,
}

impl RoundTripReport {
    fn new(file_id: &str) -> Self {
        RoundTripReport {
            file_id: file_id.to_string(),
            ast_equal: false,
            text_equal_ignoring_whitespace: false,
            python_token_count: 0,
            simpy_token_count: 0,
            py_to_simpy_us: 0,
            simpy_to_py_us: 0,
            failure_stage: None,
            error: None,
        }
    }

    fn fail(mut self, stage: Stage, error: impl ToString) -> Self {
        self.failure_stage = Some(stage);
        self.error = Some(error.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.failure_stage.is_none() && self.ast_equal
    }
}

fn micros(start: Instant) -> u64 {
    start.elapsed().as_micros().try_into().unwrap_or(u64::MAX)
}

/// Python to SimPy to Python, recording what happened instead of failing.
pub fn roundtrip_check(file_id: &str, source: &str, table: &GrammarTokenTable) -> RoundTripReport {
    let mut report = RoundTripReport::new(file_id);
    report.python_token_count = python_token_count(source).unwrap_or(0);

    let t = Instant::now();
    let original = match parse_python(source) {
        Ok(m) => m,
        Err(e) => return report.fail(Stage::ParsePython, e.render(source)),
    };
    let simpy = match emit_simpy(&original, table) {
        Ok(s) => s,
        Err(e) => return report.fail(Stage::EmitSimpy, e),
    };
    report.py_to_simpy_us = micros(t);
    report.simpy_token_count = simpy_token_count(&simpy, table).unwrap_or(0);

    let t = Instant::now();
    let back = match parse_simpy(&simpy, table) {
        Ok(m) => m,
        Err(e) => return report.fail(Stage::ParseSimpy, e.render(&simpy)),
    };
    let python = match emit_python(&back) {
        Ok(s) => s,
        Err(e) => return report.fail(Stage::EmitPython, e),
    };
    report.simpy_to_py_us = micros(t);

    let reparsed = match parse_python(&python) {
        Ok(m) => m,
        Err(e) => return report.fail(Stage::ReparsePython, e.render(&python)),
    };
    report.ast_equal = ast_equal(&original, &back) && ast_equal(&original, &reparsed);
    report.text_equal_ignoring_whitespace = text_equal_ignoring_whitespace(source, &python);
    report
}

/// Comparison key of one token: whitespace never matters outside string
/// literals, and inside f-strings only the literal parts keep it.
fn token_key(kind: PyTokenKind, text: &str) -> String {
    let squeeze = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
    match kind {
        PyTokenKind::Comment => squeeze(text),
        PyTokenKind::String if fstring::is_fstring(text) => match fstring::split(text) {
            Ok(split) => {
                let mut key = format!("{}{}", split.prefix, split.quote);
                fn pieces(ps: &[fstring::RawPiece<'_>], key: &mut String) {
                    for p in ps {
                        match p {
                            fstring::RawPiece::Literal(t) => key.push_str(t),
                            fstring::RawPiece::Interpolation {
                                source,
                                conversion,
                                format_spec,
                                ..
                            } => {
                                key.push('{');
                                key.extend(source.chars().filter(|c| !c.is_whitespace()));
                                if let Some(c) = conversion {
                                    key.push('!');
                                    key.push(*c);
                                }
                                if let Some(spec) = format_spec {
                                    key.push(':');
                                    pieces(spec, key);
                                }
                                key.push('}');
                            }
                        }
                    }
                }
                pieces(&split.pieces, &mut key);
                key
            }
            Err(_) => text.to_string(),
        },
        _ => text.to_string(),
    }
}

fn keys(source: &str) -> Option<Vec<String>> {
    let toks = lex_python(source).ok()?;
    Some(
        toks.iter()
            .filter(|t| {
                !matches!(
                    t.kind,
                    PyTokenKind::Newline | PyTokenKind::Indent | PyTokenKind::Dedent | PyTokenKind::Eof
                )
            })
            .map(|t| token_key(t.kind, &t.text))
            .collect(),
    )
}

fn matching_parens(toks: &[String]) -> Vec<Option<usize>> {
    let mut out = vec![None; toks.len()];
    let mut stack = Vec::new();
    for (i, t) in toks.iter().enumerate() {
        match t.as_str() {
            "(" | "[" | "{" => stack.push(i),
            ")" | "]" | "}" => {
                if let Some(open) = stack.pop() {
                    out[open] = Some(i);
                    out[i] = Some(open);
                }
            }
            _ => {}
        }
    }
    out
}

/// Commas directly before a closing bracket that do not make a one-element
/// tuple.
fn removable_commas(toks: &[String]) -> Vec<bool> {
    let mut out = vec![false; toks.len()];
    // (opener index, top-level comma count, last comma index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for (i, t) in toks.iter().enumerate() {
        match t.as_str() {
            "(" | "[" | "{" => stack.push((i, 0, 0)),
            "," => {
                if let Some(top) = stack.last_mut() {
                    top.1 += 1;
                    top.2 = i;
                }
            }
            ")" | "]" | "}" => {
                let Some((open, commas, last)) = stack.pop() else {
                    continue;
                };
                if commas == 0 || last + 1 != i {
                    continue;
                }
                let call = open > 0 && {
                    let prev = toks[open - 1].as_str();
                    matches!(prev, ")" | "]" | "}")
                        || prev.starts_with(|c: char| c == '_' || c.is_alphanumeric())
                            && !crate::python::lexer::is_keyword(prev)
                };
                let singleton = toks[open] == "(" && commas == 1 && !call;
                out[last] = !singleton;
            }
            _ => {}
        }
    }
    out
}

fn next_live(deleted: &[bool], from: usize) -> usize {
    (from..deleted.len())
        .find(|&k| !deleted[k])
        .unwrap_or(deleted.len())
}

fn is_closer(t: Option<&String>) -> bool {
    matches!(t.map(String::as_str), Some(")" | "]" | "}"))
}

/// Equality after deleting whitespace outside string literals, treating
/// parenthesis pairs and trailing commas present on only one side as
/// removable.
/// The source with every whitespace character outside string literals
/// removed; `None` if it does not tokenize.
pub fn strip_whitespace(source: &str) -> Option<String> {
    keys(source).map(|k| k.concat())
}

pub fn text_equal_ignoring_whitespace(a: &str, b: &str) -> bool {
    let (Some(a), Some(b)) = (keys(a), keys(b)) else {
        return false;
    };
    Aligner::new(&a, &b).run()
}

#[derive(Clone, Copy, PartialEq)]
enum Move {
    Match,
    CommaA,
    CommaB,
    ParenA,
    ParenB,
}

/// Backtracking search for a set of removable parentheses and commas that
/// makes two token sequences equal.
struct Aligner<'t> {
    toks: [&'t [String]; 2],
    pairs: [Vec<Option<usize>>; 2],
    commas: [Vec<bool>; 2],
    deleted: [Vec<bool>; 2],
    trail: Vec<(usize, usize)>,
}

const ALIGN_BUDGET: usize = 1_000_000;

impl<'t> Aligner<'t> {
    fn new(a: &'t [String], b: &'t [String]) -> Self {
        Aligner {
            toks: [a, b],
            pairs: [matching_parens(a), matching_parens(b)],
            commas: [removable_commas(a), removable_commas(b)],
            deleted: [vec![false; a.len()], vec![false; b.len()]],
            trail: Vec::new(),
        }
    }

    fn live(&self, side: usize, from: usize) -> usize {
        next_live(&self.deleted[side], from)
    }

    fn moves(&self, i: usize, j: usize) -> Vec<Move> {
        let [a, b] = self.toks;
        let (x, y) = (a.get(i), b.get(j));
        let mut out = Vec::new();
        if x.is_some() && x == y {
            out.push(Move::Match);
        }
        if x.is_some() && self.commas[0][i] && is_closer(y) && is_closer(a.get(self.live(0, i + 1))) {
            out.push(Move::CommaA);
        }
        if y.is_some() && self.commas[1][j] && is_closer(x) && is_closer(b.get(self.live(1, j + 1))) {
            out.push(Move::CommaB);
        }
        if x.map(String::as_str) == Some("(") && self.pairs[0][i].is_some() {
            out.push(Move::ParenA);
        }
        if y.map(String::as_str) == Some("(") && self.pairs[1][j].is_some() {
            out.push(Move::ParenB);
        }
        out
    }

    fn delete(&mut self, side: usize, k: usize) {
        self.deleted[side][k] = true;
        self.trail.push((side, k));
    }

    fn apply(&mut self, m: Move, i: usize, j: usize) -> (usize, usize) {
        match m {
            Move::Match => return (i + 1, j + 1),
            Move::CommaA => self.delete(0, i),
            Move::CommaB => self.delete(1, j),
            Move::ParenA => {
                let close = self.pairs[0][i].unwrap_or(i);
                self.delete(0, i);
                self.delete(0, close);
            }
            Move::ParenB => {
                let close = self.pairs[1][j].unwrap_or(j);
                self.delete(1, j);
                self.delete(1, close);
            }
        }
        (i, j)
    }

    fn run(mut self) -> bool {
        // (i, j, trail length, index of the move taken)
        let mut choices: Vec<(usize, usize, usize, usize)> = Vec::new();
        let (mut i, mut j) = (0, 0);
        for _ in 0..ALIGN_BUDGET {
            i = self.live(0, i);
            j = self.live(1, j);
            if i == self.toks[0].len() && j == self.toks[1].len() {
                return true;
            }
            let moves = self.moves(i, j);
            if let Some(&first) = moves.first() {
                if moves.len() > 1 {
                    choices.push((i, j, self.trail.len(), 0));
                }
                (i, j) = self.apply(first, i, j);
                continue;
            }
            loop {
                let Some((ci, cj, trail, taken)) = choices.pop() else {
                    return false;
                };
                while self.trail.len() > trail {
                    if let Some((side, k)) = self.trail.pop() {
                        self.deleted[side][k] = false;
                    }
                }
                let moves = self.moves(ci, cj);
                if let Some(&next) = moves.get(taken + 1) {
                    choices.push((ci, cj, trail, taken + 1));
                    (i, j) = self.apply(next, ci, cj);
                    break;
                }
            }
        }
        false
    }
}

pub fn write_csv<W: Write>(rows: &[RoundTripReport], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_jsonl<W: Write>(rows: &[RoundTripReport], mut out: W) -> std::io::Result<()> {
    for row in rows {
        serde_json::to_writer(&mut out, row)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whitespace_and_parens() {
        assert!(text_equal_ignoring_whitespace("x=1\n", "x = 1\n"));
        assert!(text_equal_ignoring_whitespace("x = (1)\n", "x = 1\n"));
        assert!(text_equal_ignoring_whitespace("x = 1 + \\\n  2\n", "x = 1 + 2\n"));
        assert!(!text_equal_ignoring_whitespace("x = 'a b'\n", "x = 'ab'\n"));
        assert!(text_equal_ignoring_whitespace("f'{a+b}'\n", "f'{a + b}'\n"));
        assert!(!text_equal_ignoring_whitespace("f'{a} b'\n", "f'{a}b'\n"));
        assert!(!text_equal_ignoring_whitespace("x = 1\n", "x = 2\n"));
        assert!(text_equal_ignoring_whitespace("f(a, b,)\n", "f(a, b)\n"));
        assert!(!text_equal_ignoring_whitespace("x = (1,)\n", "x = (1)\n"));
        assert!(text_equal_ignoring_whitespace("f(1,)\n", "f(1)\n"));
        assert!(text_equal_ignoring_whitespace(
            "for p in ((1, 2), (3, 4)):\n    pass\n",
            "for p in (1, 2), (3, 4):\n    pass\n"
        ));
        assert!(text_equal_ignoring_whitespace("x = [1,]\n", "x = [1]\n"));
        assert!(!text_equal_ignoring_whitespace(
            "if (1,):\n    pass\n",
            "if (1):\n    pass\n"
        ));
    }

    #[test]
    fn stripping_keeps_string_interiors() {
        assert_eq!(strip_whitespace("x = 'a b'  # c d\n").unwrap(), "x='a b'#cd");
    }

    #[test]
    fn simple_round_trip() {
        let t = GrammarTokenTable::default_table();
        let r = roundtrip_check("x", "x = 1\n", &t);
        assert!(r.ast_equal && r.text_equal_ignoring_whitespace, "{r:?}");
        assert_eq!(r.failure_stage, None);
    }

    #[test]
    fn failures_are_recorded() {
        let t = GrammarTokenTable::default_table();
        let r = roundtrip_check("bad", "x = = 1\n", &t);
        assert_eq!(r.failure_stage, Some(Stage::ParsePython));
        assert!(!r.passed());
    }

    #[test]
    fn csv_and_jsonl() {
        let t = GrammarTokenTable::default_table();
        let rows = vec![roundtrip_check("a", "pass\n", &t)];
        let mut csv_out = Vec::new();
        write_csv(&rows, &mut csv_out).unwrap();
        let text = String::from_utf8(csv_out).unwrap();
        assert!(text.starts_with("file_id,ast_equal,"));
        let mut json = Vec::new();
        write_jsonl(&rows, &mut json).unwrap();
        let back: RoundTripReport = serde_json::from_slice(json.trim_ascii_end()).unwrap();
        assert_eq!(back, rows[0]);
    }
}
