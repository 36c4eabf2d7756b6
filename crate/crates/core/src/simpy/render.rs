//! SimPy text from lexemes: placeholders, no layout, a space only where two
//! pieces would otherwise lex as one.

use crate::ast::{validate, Module};
use crate::error::EmitError;
use crate::grammar::{Dialect, Spelling};
use crate::python::lexer::OPERATORS;
use crate::syntax::fstring;
use crate::syntax::term::Term;
use crate::syntax::writer::{interpolation_lexemes, module_lexemes, Layout, Lex};

use super::lexer::escape_comment;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Word,
    Number,
    Str,
    Op,
    Placeholder,
    CommentText,
}

#[derive(Debug)]
enum Out {
    Piece(Kind, String),
    /// Separator that is written only when the next piece could extend
    /// what precedes it.
    Sep,
    LineSep,
    CommentEnd,
}

pub fn emit_simpy_with(module: &Module, dialect: &Dialect) -> Result<String, EmitError> {
    validate(module)?;
    Ok(render(&module_lexemes(module, Layout::Simpy), dialect))
}

fn spelled(dialect: &Dialect, term: Term, out: &mut Vec<Out>) {
    match dialect.spelling(term) {
        Spelling::Placeholder(p) => out.push(Out::Piece(Kind::Placeholder, p.clone())),
        Spelling::Verbatim(parts) => {
            for p in parts {
                let kind = if p.starts_with(|c: char| c.is_alphanumeric() || c == '_') {
                    Kind::Word
                } else {
                    Kind::Op
                };
                out.push(Out::Piece(kind, p.clone()));
            }
        }
        Spelling::Dropped => {}
        Spelling::Space => out.push(Out::Sep),
    }
}

fn pieces(lexes: &[Lex<'_>], dialect: &Dialect) -> Vec<Out> {
    let mut out = Vec::with_capacity(lexes.len());
    for lex in lexes {
        match lex {
            Lex::Term(Term::LineSep) => out.push(Out::LineSep),
            Lex::Term(t) => spelled(dialect, *t, &mut out),
            Lex::Name(n) => out.push(Out::Piece(Kind::Word, n.to_string())),
            Lex::Num(n) => out.push(Out::Piece(Kind::Number, n.to_string())),
            Lex::Str(s) => out.push(Out::Piece(Kind::Str, s.to_string())),
            Lex::FStr(f) => {
                let text = fstring::render(f, &mut |e| {
                    join(pieces(&interpolation_lexemes(e, Layout::Simpy), dialect), dialect)
                });
                out.push(Out::Piece(Kind::Str, text));
            }
            Lex::Comment(text) => {
                spelled(dialect, Term::CommentMark, &mut out);
                let terminator = dialect.spelling(Term::LineSep).text();
                out.push(Out::Piece(Kind::CommentText, escape_comment(text, &terminator)));
            }
            Lex::CommentEnd => out.push(Out::CommentEnd),
        }
    }
    out
}

fn is_op_prefix(s: &str) -> bool {
    OPERATORS
        .iter()
        .any(|op| *op != "..." && op.len() > 1 && op.starts_with(s))
}

fn needs_space(prev: (Kind, &str), next: (Kind, &str)) -> bool {
    use Kind::*;
    let (pk, pt) = prev;
    let (nk, nt) = next;
    if pk == CommentText || nk == CommentText {
        return false;
    }
    if pk == Op {
        if let Some(c) = nt.chars().next() {
            let mut joined = pt.to_string();
            joined.push(c);
            if is_op_prefix(&joined) {
                return true;
            }
            if pt.ends_with('<') && (c.is_alphabetic() || c == '_' || c == '<') {
                return true;
            }
        }
        return false;
    }
    match (pk, nk) {
        (Word | Number, Word | Number) => true,
        (Word, Str) => true,
        (Number, Op) => nt.starts_with('.'),
        _ => false,
    }
}

/// Next piece or statement boundary after index `i`, skipping separators.
fn continues_after(items: &[Out], i: usize, dialect: &Dialect) -> bool {
    match items[i + 1..].iter().find(|o| !matches!(o, Out::Sep)) {
        Some(Out::Piece(Kind::Str, _)) => true,
        Some(Out::Piece(Kind::Op | Kind::Word | Kind::Placeholder, text)) => dialect.continues(text),
        _ => false,
    }
}

/// Whether a line separator before `items[i + 1..]` can be left out.
fn separator_elidable(items: &[Out], i: usize, dialect: &Dialect) -> bool {
    match items.get(i + 1) {
        None => true,
        Some(Out::Piece(Kind::Placeholder, text)) => {
            if *text == dialect.spelling(Term::BlockEnd).text() {
                return true;
            }
            crate::syntax::term::Term::all()
                .into_iter()
                .any(|t| dialect.separator_optional_before(t) && dialect.spelling(t).text() == *text)
        }
        _ => false,
    }
}

fn join(items: Vec<Out>, dialect: &Dialect) -> String {
    let line_sep = dialect.spelling(Term::LineSep);
    let mut resolved: Vec<(Kind, String)> = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        match item {
            Out::Piece(kind, text) => resolved.push((*kind, text.clone())),
            Out::Sep => {
                if continues_after(&items, i, dialect) {
                    resolved.push((Kind::Op, ",".into()));
                }
            }
            Out::LineSep => {
                if !separator_elidable(&items, i, dialect) {
                    spelled_into(line_sep, &mut resolved);
                }
            }
            Out::CommentEnd => {
                if i + 1 < items.len() {
                    spelled_into(line_sep, &mut resolved);
                }
            }
        }
    }
    let mut text = String::new();
    let mut prev: Option<(Kind, &str)> = None;
    for (kind, piece) in &resolved {
        if piece.is_empty() {
            continue;
        }
        if let Some(p) = prev {
            if needs_space(p, (*kind, piece)) {
                text.push(' ');
            }
        }
        text.push_str(piece);
        prev = Some((*kind, piece));
    }
    text
}

fn spelled_into(spelling: &Spelling, out: &mut Vec<(Kind, String)>) {
    match spelling {
        Spelling::Placeholder(p) => out.push((Kind::Placeholder, p.clone())),
        Spelling::Verbatim(parts) => out.extend(parts.iter().map(|p| (Kind::Op, p.clone()))),
        Spelling::Dropped | Spelling::Space => {}
    }
}

fn render(lexes: &[Lex<'_>], dialect: &Dialect) -> String {
    join(pieces(lexes, dialect), dialect)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_rules() {
        use Kind::*;
        assert!(needs_space((Word, "a"), (Word, "b")));
        assert!(needs_space((Word, "r"), (Str, "'x'")));
        assert!(!needs_space((Str, "'x'"), (Word, "a")));
        assert!(needs_space((Op, "*"), (Op, "*")));
        assert!(needs_space((Op, "<"), (Word, "b")));
        assert!(needs_space((Op, "<"), (Placeholder, "<true>")));
        assert!(!needs_space((Op, "("), (Op, "-")));
        assert!(needs_space((Number, "1"), (Op, ".")));
        assert!(!needs_space((Word, "a"), (Placeholder, "<ge>")));
        assert!(!needs_space((Placeholder, "<ge>"), (Number, "1")));
    }
}
