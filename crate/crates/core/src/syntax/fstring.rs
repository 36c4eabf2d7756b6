//! Splitting f-string literals into literal text and interpolations.
//!
//! Works on the raw token text, so it serves both grammars: each caller parses
//! the interpolation sources with its own expression parser.

use crate::ast::{Expr, FPiece, FString, SourceSpan};
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub enum RawPiece<'a> {
    Literal(&'a str),
    Interpolation {
        source: &'a str,
        /// Byte offset of `source` within the whole token text.
        offset: usize,
        conversion: Option<char>,
        format_spec: Option<Vec<RawPiece<'a>>>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawFString<'a> {
    pub prefix: &'a str,
    pub quote: &'a str,
    pub pieces: Vec<RawPiece<'a>>,
}

/// Length of the prefix (`f`, `rf`, ...) of a string literal.
pub fn prefix_len(raw: &str) -> usize {
    raw.find(['\'', '"']).unwrap_or(0)
}

pub fn is_fstring(raw: &str) -> bool {
    raw[..prefix_len(raw)].contains(['f', 'F'])
}

/// Splits an f-string token. Errors carry a byte offset into `raw`.
pub fn split(raw: &str) -> Result<RawFString<'_>, (String, usize)> {
    let plen = prefix_len(raw);
    let prefix = &raw[..plen];
    let rest = &raw[plen..];
    let q = rest.chars().next().ok_or(("missing quote".to_string(), plen))?;
    let triple: String = std::iter::repeat_n(q, 3).collect();
    let qlen = if rest.len() >= 6 && rest.starts_with(&triple) {
        3
    } else {
        1
    };
    if rest.len() < 2 * qlen {
        return Err(("truncated string literal".into(), plen));
    }
    let quote = &rest[..qlen];
    let body_start = plen + qlen;
    let body = &raw[body_start..raw.len() - qlen];
    let raw_mode = prefix.contains(['r', 'R']);
    let mut s = Splitter {
        text: body,
        base: body_start,
        pos: 0,
        raw_mode,
    };
    let pieces = s.pieces(false)?;
    if s.pos != body.len() {
        return Err(("single '}' is not allowed in f-string".into(), body_start + s.pos));
    }
    Ok(RawFString {
        prefix,
        quote,
        pieces,
    })
}

struct Splitter<'a> {
    text: &'a str,
    base: usize,
    pos: usize,
    raw_mode: bool,
}

impl<'a> Splitter<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, (String, usize)> {
        Err((msg.to_string(), self.base + self.pos))
    }

    fn byte(&self, at: usize) -> Option<u8> {
        self.text.as_bytes().get(at).copied()
    }

    /// Reads pieces until end of text or, in a format spec, an unmatched `}`.
    fn pieces(&mut self, in_spec: bool) -> Result<Vec<RawPiece<'a>>, (String, usize)> {
        let mut out = Vec::new();
        let mut lit_start = self.pos;
        while let Some(b) = self.byte(self.pos) {
            match b {
                b'\\' if !self.raw_mode && self.text[self.pos..].starts_with("\\N{") => {
                    match self.text[self.pos..].find('}') {
                        Some(n) => self.pos += n + 1,
                        None => return self.err("malformed \\N escape"),
                    }
                }
                b'\\' => {
                    self.pos += 1;
                    if let Some(c) = self.text[self.pos..].chars().next() {
                        if c != '{' && c != '}' {
                            self.pos += c.len_utf8();
                        }
                    }
                }
                b'{' if !in_spec && self.byte(self.pos + 1) == Some(b'{') => self.pos += 2,
                b'}' if !in_spec && self.byte(self.pos + 1) == Some(b'}') => self.pos += 2,
                b'{' => {
                    if self.pos > lit_start {
                        out.push(RawPiece::Literal(&self.text[lit_start..self.pos]));
                    }
                    out.push(self.interpolation()?);
                    lit_start = self.pos;
                }
                b'}' => {
                    if in_spec {
                        break;
                    }
                    return self.err("single '}' is not allowed in f-string");
                }
                _ => self.pos += 1,
            }
        }
        if self.pos > lit_start {
            out.push(RawPiece::Literal(&self.text[lit_start..self.pos]));
        }
        Ok(out)
    }

    fn interpolation(&mut self) -> Result<RawPiece<'a>, (String, usize)> {
        self.pos += 1;
        let start = self.pos;
        let mut depth = 0usize;
        loop {
            let Some(b) = self.byte(self.pos) else {
                return self.err("unterminated f-string interpolation");
            };
            match b {
                b'(' | b'[' | b'{' => depth += 1,
                b')' | b']' => depth = depth.saturating_sub(1),
                b'}' if depth > 0 => depth -= 1,
                b'}' => break,
                b'!' if depth == 0 && self.byte(self.pos + 1) != Some(b'=') => break,
                b':' if depth == 0 => break,
                b'\'' | b'"' => {
                    self.skip_string(b)?;
                    continue;
                }
                b'\\' => return self.err("backslash in f-string expression"),
                b'#' => return self.err("'#' in f-string expression"),
                _ => {}
            }
            self.pos += 1;
        }
        let source = &self.text[start..self.pos];
        let trimmed = source.trim_end();
        if trimmed.trim().is_empty() {
            return self.err("empty expression in f-string");
        }
        if let Some(head) = trimmed.strip_suffix('=') {
            let before = head.chars().last();
            if !matches!(before, Some('=' | '!' | '<' | '>')) {
                return self.err("self-documenting f-string expressions are not supported");
            }
        }
        let mut conversion = None;
        if self.byte(self.pos) == Some(b'!') {
            self.pos += 1;
            match self.byte(self.pos) {
                Some(c @ (b's' | b'r' | b'a')) => {
                    conversion = Some(c as char);
                    self.pos += 1;
                }
                _ => return self.err("invalid f-string conversion"),
            }
        }
        let mut format_spec = None;
        if self.byte(self.pos) == Some(b':') {
            self.pos += 1;
            format_spec = Some(self.pieces(true)?);
        }
        if self.byte(self.pos) != Some(b'}') {
            return self.err("expected '}' in f-string");
        }
        self.pos += 1;
        Ok(RawPiece::Interpolation {
            source,
            offset: self.base + start,
            conversion,
            format_spec,
        })
    }

    fn skip_string(&mut self, q: u8) -> Result<(), (String, usize)> {
        let triple = [q, q, q];
        let is_triple = self.text.as_bytes()[self.pos..].starts_with(&triple);
        let qlen = if is_triple { 3 } else { 1 };
        self.pos += qlen;
        loop {
            match self.byte(self.pos) {
                None => return self.err("unterminated string in f-string expression"),
                Some(b) if b == q => {
                    if !is_triple || self.text.as_bytes()[self.pos..].starts_with(&triple) {
                        self.pos += qlen;
                        return Ok(());
                    }
                    self.pos += 1;
                }
                Some(_) => self.pos += 1,
            }
        }
    }
}

/// Builds the AST form of an f-string token, parsing each interpolation with
/// `parse(source, offset)`. `base` is the token's byte offset in the file.
pub fn lower(
    raw: &str,
    base: usize,
    parse: &mut dyn FnMut(&str, usize) -> Result<Expr, ParseError>,
) -> Result<FString, ParseError> {
    let split =
        split(raw).map_err(|(msg, at)| ParseError::new(msg, SourceSpan::new(base + at, base + at)))?;
    Ok(FString {
        prefix: split.prefix.to_string(),
        quote: split.quote.to_string(),
        pieces: lower_pieces(&split.pieces, base, parse)?,
    })
}

fn lower_pieces(
    pieces: &[RawPiece<'_>],
    base: usize,
    parse: &mut dyn FnMut(&str, usize) -> Result<Expr, ParseError>,
) -> Result<Vec<FPiece>, ParseError> {
    pieces
        .iter()
        .map(|p| match p {
            RawPiece::Literal(text) => Ok(FPiece::Literal(text.to_string())),
            RawPiece::Interpolation {
                source,
                offset,
                conversion,
                format_spec,
            } => Ok(FPiece::Interpolation {
                expr: Box::new(parse(source, base + offset)?),
                conversion: *conversion,
                format_spec: match format_spec {
                    Some(spec) => Some(lower_pieces(spec, base, parse)?),
                    None => None,
                },
            }),
        })
        .collect()
}

/// Renders an f-string, with `expr` producing each interpolation's source.
pub fn render(f: &FString, expr: &mut dyn FnMut(&Expr) -> String) -> String {
    let mut out = String::new();
    out.push_str(&f.prefix);
    out.push_str(&f.quote);
    render_pieces(&f.pieces, expr, &mut out);
    out.push_str(&f.quote);
    out
}

fn render_pieces(pieces: &[FPiece], expr: &mut dyn FnMut(&Expr) -> String, out: &mut String) {
    for piece in pieces {
        match piece {
            FPiece::Literal(text) => out.push_str(text),
            FPiece::Interpolation {
                expr: e,
                conversion,
                format_spec,
            } => {
                out.push('{');
                let text = expr(e);
                if text.starts_with('{') {
                    out.push(' ');
                }
                out.push_str(&text);
                if let Some(c) = conversion {
                    out.push('!');
                    out.push(*c);
                }
                if let Some(spec) = format_spec {
                    out.push(':');
                    render_pieces(spec, expr, out);
                }
                out.push('}');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sources(raw: &str) -> Vec<String> {
        fn walk(pieces: &[RawPiece<'_>], out: &mut Vec<String>) {
            for p in pieces {
                match p {
                    RawPiece::Literal(t) => out.push(format!("L{t}")),
                    RawPiece::Interpolation {
                        source,
                        conversion,
                        format_spec,
                        ..
                    } => {
                        out.push(format!(
                            "E{source}{}",
                            conversion.map(|c| format!("!{c}")).unwrap_or_default()
                        ));
                        if let Some(spec) = format_spec {
                            walk(spec, out);
                        }
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(&split(raw).unwrap().pieces, &mut out);
        out
    }

    #[test]
    fn pieces_and_escapes() {
        assert_eq!(
            sources("f'a{x!r:>{w}}b{{c}}'"),
            ["La", "Ex!r", "L>", "Ew", "Lb{{c}}"]
        );
    }

    #[test]
    fn nested_brackets_and_strings() {
        assert_eq!(
            sources("f\"{d['k']}{a != b}{ {1: 2}[1]}\""),
            ["Ed['k']", "Ea != b", "E {1: 2}[1]"]
        );
    }

    #[test]
    fn triple_quoted() {
        let s = split("f'''x{y}'''").unwrap();
        assert_eq!(s.quote, "'''");
        assert_eq!(s.prefix, "f");
    }

    #[test]
    fn named_escape_is_literal() {
        assert_eq!(sources("f'\\N{BULLET} {x}'"), ["L\\N{BULLET} ", "Ex"]);
    }

    #[test]
    fn rejects() {
        assert!(split("f'{x=}'").is_err());
        assert!(split("f'{}'").is_err());
        assert!(split("f'}'").is_err());
        assert!(split("f'{x'").is_err());
    }
}
