//! SimPy tokenizer. There is no layout: whitespace only separates tokens.

use crate::ast::SourceSpan;
use crate::error::LexError;
use crate::grammar::{Dialect, Spelling};
use crate::python::lexer::{
    is_ident_continue, is_ident_start, scan_number, scan_string, string_prefix_len, OPERATORS,
};
use crate::syntax::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimpyTokenKind {
    Placeholder,
    Identifier,
    Number,
    String,
    /// A Python symbol the table leaves as is.
    Symbol,
    CommentText,
    Eof,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SimpyToken {
    pub kind: SimpyTokenKind,
    pub text: String,
    pub span: SourceSpan,
}

/// Escapes comment text so it cannot contain the terminator.
pub fn escape_comment(text: &str, terminator: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(c) = rest.chars().next() {
        if c == '\\' {
            out.push_str("\\\\");
            rest = &rest[1..];
        } else if !terminator.is_empty() && rest.starts_with(terminator) {
            out.push('\\');
            out.push_str(terminator);
            rest = &rest[terminator.len()..];
        } else {
            out.push(c);
            rest = &rest[c.len_utf8()..];
        }
    }
    out
}

fn placeholder_at(rest: &str) -> Option<&str> {
    let body = rest.strip_prefix('<')?;
    let n = body
        .bytes()
        .take_while(|b| b.is_ascii_lowercase() || *b == b'_')
        .count();
    (n > 0 && body.as_bytes().get(n) == Some(&b'>')).then(|| &rest[..n + 2])
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    dialect: &'a Dialect,
    comment_mark: String,
    terminator: String,
    out: Vec<SimpyToken>,
}

pub fn lex_simpy_with(source: &str, dialect: &Dialect) -> Result<Vec<SimpyToken>, LexError> {
    let text_of = |t: Term| match dialect.spelling(t) {
        Spelling::Placeholder(p) => p.clone(),
        Spelling::Verbatim(parts) => parts.concat(),
        _ => String::new(),
    };
    let mut lexer = Lexer {
        src: source,
        pos: if source.starts_with('\u{feff}') { 3 } else { 0 },
        dialect,
        comment_mark: text_of(Term::CommentMark),
        terminator: text_of(Term::LineSep),
        out: Vec::new(),
    };
    lexer.run()?;
    Ok(lexer.out)
}

impl<'a> Lexer<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn push(&mut self, kind: SimpyTokenKind, start: usize) {
        self.out.push(SimpyToken {
            kind,
            text: self.src[start..self.pos].to_string(),
            span: SourceSpan::new(start, self.pos),
        });
    }

    fn run(&mut self) -> Result<(), LexError> {
        while let Some(c) = self.rest().chars().next() {
            let start = self.pos;
            if c.is_whitespace() {
                self.pos += c.len_utf8();
                continue;
            }
            if !self.comment_mark.is_empty() && self.rest().starts_with(self.comment_mark.as_str()) {
                self.pos += self.comment_mark.len();
                let kind = if self.dialect.is_placeholder(&self.comment_mark) {
                    SimpyTokenKind::Placeholder
                } else {
                    SimpyTokenKind::Symbol
                };
                self.push(kind, start);
                self.comment_text();
                continue;
            }
            if let Some(p) = placeholder_at(self.rest()).filter(|p| self.dialect.is_placeholder(p)) {
                self.pos += p.len();
                self.push(SimpyTokenKind::Placeholder, start);
                continue;
            }
            if c == '"' || c == '\'' {
                self.pos = scan_string(self.src, start, 0)?;
                self.push(SimpyTokenKind::String, start);
            } else if c.is_ascii_digit()
                || (c == '.' && self.rest()[1..].starts_with(|d: char| d.is_ascii_digit()))
            {
                self.pos = scan_number(self.src, start)?;
                self.push(SimpyTokenKind::Number, start);
            } else if is_ident_start(c) {
                let prefix = string_prefix_len(self.rest());
                if prefix > 0 {
                    self.pos = scan_string(self.src, start, prefix)?;
                    self.push(SimpyTokenKind::String, start);
                } else {
                    while let Some(c) = self.rest().chars().next().filter(|&c| is_ident_continue(c)) {
                        self.pos += c.len_utf8();
                    }
                    self.push(SimpyTokenKind::Identifier, start);
                }
            } else if let Some(op) = OPERATORS
                .iter()
                .find(|op| **op != "..." && self.rest().starts_with(**op))
            {
                self.pos += op.len();
                self.push(SimpyTokenKind::Symbol, start);
            } else {
                self.pos += c.len_utf8();
                return Err(LexError::new(
                    format!("illegal character {c:?}"),
                    SourceSpan::new(start, self.pos),
                ));
            }
        }
        self.out.push(SimpyToken {
            kind: SimpyTokenKind::Eof,
            text: String::new(),
            span: SourceSpan::new(self.src.len(), self.src.len()),
        });
        Ok(())
    }

    /// Comment payload up to the next unescaped terminator, unescaped.
    fn comment_text(&mut self) {
        let start = self.pos;
        let mut text = String::new();
        loop {
            let rest = self.rest();
            let Some(c) = rest.chars().next() else { break };
            // Python comments never span lines, so a line break ends one too.
            if c == '\n'
                || c == '\r'
                || !self.terminator.is_empty() && rest.starts_with(self.terminator.as_str())
            {
                break;
            }
            if c == '\\' {
                if rest[1..].starts_with('\\') {
                    text.push('\\');
                    self.pos += 2;
                    continue;
                }
                if !self.terminator.is_empty() && rest[1..].starts_with(self.terminator.as_str()) {
                    text.push_str(&self.terminator);
                    self.pos += 1 + self.terminator.len();
                    continue;
                }
            }
            text.push(c);
            self.pos += c.len_utf8();
        }
        self.out.push(SimpyToken {
            kind: SimpyTokenKind::CommentText,
            text,
            span: SourceSpan::new(start, self.pos),
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::GrammarTokenTable;

    fn lex(src: &str) -> Vec<(SimpyTokenKind, String)> {
        let table = GrammarTokenTable::default_table();
        lex_simpy_with(src, table.dialect())
            .unwrap()
            .into_iter()
            .map(|t| (t.kind, t.text))
            .collect()
    }

    use SimpyTokenKind::{CommentText, Eof, Identifier, Number, Placeholder, Symbol};

    #[test]
    fn empty_is_eof() {
        assert_eq!(lex(""), vec![(Eof, String::new())]);
    }

    #[test]
    fn placeholders_are_atomic() {
        assert_eq!(
            lex("x<ge>1"),
            vec![
                (Identifier, "x".into()),
                (Placeholder, "<ge>".into()),
                (Number, "1".into()),
                (Eof, String::new())
            ]
        );
        assert_eq!(lex("<true>")[0], (Placeholder, "<true>".into()));
        // Not a placeholder of the table: ordinary comparison.
        assert_eq!(lex("a<b>c")[1], (Symbol, "<".into()));
    }

    #[test]
    fn comments_stop_at_line_breaks() {
        let toks = lex("<comment> a\nx");
        assert_eq!(toks[1], (CommentText, " a".into()));
        assert_eq!(toks[2], (Identifier, "x".into()));
    }

    #[test]
    fn comments_run_to_separator() {
        let toks = lex("<comment> a \\<line_sep> b\\\\<line_sep>x");
        assert_eq!(toks[1], (CommentText, " a <line_sep> b\\".into()));
        assert_eq!(toks[2], (Placeholder, "<line_sep>".into()));
        assert_eq!(toks[3], (Identifier, "x".into()));
        assert_eq!(
            escape_comment(" a <line_sep> b\\", "<line_sep>"),
            " a \\<line_sep> b\\\\"
        );
    }

    #[test]
    fn strings_keep_placeholder_text() {
        assert_eq!(lex("'<true>'")[0], (SimpyTokenKind::String, "'<true>'".into()));
        assert_eq!(lex("rb'x'")[0], (SimpyTokenKind::String, "rb'x'".into()));
    }

    #[test]
    fn errors() {
        let table = GrammarTokenTable::default_table();
        assert!(lex_simpy_with("$", table.dialect()).is_err());
        assert!(lex_simpy_with("'abc", table.dialect()).is_err());
    }
}
