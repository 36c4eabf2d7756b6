//! Canonical Python output: four-space indents, one statement per line,
//! single spaces around binary operators and after commas.

use crate::ast::{validate, Module};
use crate::error::EmitError;
use crate::syntax::fstring;
use crate::syntax::term::{PySpace, Term};
use crate::syntax::writer::{interpolation_lexemes, module_lexemes, Layout, Lex};

pub fn emit_python(module: &Module) -> Result<String, EmitError> {
    validate(module)?;
    Ok(render(&module_lexemes(module, Layout::Python)))
}

fn class(lex: &Lex<'_>) -> PySpace {
    match lex {
        Lex::Term(t) => t.py_space(),
        Lex::Name(_) | Lex::Num(_) | Lex::Str(_) | Lex::FStr(_) => PySpace::Word,
        Lex::Comment(_) | Lex::CommentEnd => PySpace::Layout,
    }
}

fn space_between(a: PySpace, b: PySpace) -> bool {
    use PySpace::*;
    if a == Open || a == Tight || matches!(b, Close | Comma | Tight | Colon) {
        return false;
    }
    if matches!(a, Comma | Colon | Binary) || b == Binary {
        return true;
    }
    if a == Keyword || b == Keyword {
        return true;
    }
    a == Word && b == Word
}

fn text(lex: &Lex<'_>) -> String {
    match lex {
        Lex::Term(t) => t.python().to_string(),
        Lex::Name(s) | Lex::Num(s) | Lex::Str(s) => s.to_string(),
        Lex::FStr(f) => fstring::render(f, &mut |e| {
            render_inline(&interpolation_lexemes(e, Layout::Python))
        }),
        Lex::Comment(_) | Lex::CommentEnd => String::new(),
    }
}

/// Renders lexemes that contain no layout.
pub fn render_inline(lexes: &[Lex<'_>]) -> String {
    let mut line = Line::default();
    for lex in lexes {
        line.push(lex);
    }
    line.text
}

#[derive(Default)]
struct Line {
    text: String,
    prev: Option<PySpace>,
    /// Set after a string-concatenation space; the next piece attaches.
    glued: bool,
}

impl Line {
    fn push(&mut self, lex: &Lex<'_>) {
        if let Lex::Term(Term::Concat) = lex {
            self.text.push(' ');
            self.glued = true;
            return;
        }
        let c = class(lex);
        if let Some(prev) = self.prev {
            if !self.glued && space_between(prev, c) {
                self.text.push(' ');
            }
        }
        self.glued = false;
        self.text.push_str(&text(lex));
        self.prev = Some(c);
    }

    fn is_empty(&self) -> bool {
        self.text.is_empty()
    }
}

fn render(lexes: &[Lex<'_>]) -> String {
    let mut out = String::new();
    let mut indent = 0usize;
    let mut line = Line::default();
    let flush = |line: &mut Line, out: &mut String, indent: usize| {
        if !line.is_empty() {
            for _ in 0..indent {
                out.push_str("    ");
            }
            out.push_str(&line.text);
            out.push('\n');
        }
        *line = Line::default();
    };
    for lex in lexes {
        match lex {
            Lex::Term(Term::BlockStart) => {
                flush(&mut line, &mut out, indent);
                indent += 1;
            }
            Lex::Term(Term::BlockEnd) => {
                flush(&mut line, &mut out, indent);
                indent -= 1;
            }
            Lex::Term(Term::LineSep) | Lex::CommentEnd => flush(&mut line, &mut out, indent),
            Lex::Comment(text) => {
                if !line.is_empty() {
                    line.text.push_str("  ");
                }
                line.text.push('#');
                line.text.push_str(text);
                line.prev = Some(PySpace::Layout);
            }
            other => line.push(other),
        }
    }
    flush(&mut line, &mut out, indent);
    out
}
