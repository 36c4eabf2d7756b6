//! Python frontend: tokenizer, parser and canonical emitter.

pub mod emitter;
pub mod lexer;

use crate::ast::Module;
use crate::error::{LexError, ParseError};
use crate::syntax::parser::{Mode, ParseStats, Parser};
use crate::syntax::token::{Tok, TokKind};

pub use emitter::emit_python;
pub use lexer::{lex_python, PyToken, PyTokenKind};

pub(crate) fn tokens(source: &str) -> Result<Vec<Tok>, LexError> {
    Ok(lex_python(source)?
        .into_iter()
        .map(|t| Tok {
            kind: match t.kind {
                PyTokenKind::Keyword => TokKind::Keyword,
                PyTokenKind::Name => TokKind::Name,
                PyTokenKind::Number => TokKind::Number,
                PyTokenKind::String => TokKind::String,
                PyTokenKind::Op => TokKind::Op,
                PyTokenKind::Newline => TokKind::Newline,
                PyTokenKind::Indent => TokKind::Indent,
                PyTokenKind::Dedent => TokKind::Dedent,
                PyTokenKind::Comment => TokKind::Comment,
                PyTokenKind::Eof => TokKind::Eof,
            },
            text: t.text,
            span: t.span,
            own_line: t.own_line,
        })
        .collect())
}

fn relex(source: &str) -> Result<Vec<Tok>, ParseError> {
    Ok(tokens(source)?)
}

pub fn parse_python(source: &str) -> Result<Module, ParseError> {
    parse_python_with_stats(source).map(|(m, _)| m)
}

pub fn parse_python_with_stats(source: &str) -> Result<(Module, ParseStats), ParseError> {
    let mut parser = Parser::new(tokens(source)?, Mode::Python, &relex);
    let module = parser.module()?;
    Ok((module, parser.stats()))
}

/// Number of Python lexical tokens, layout and comments included.
pub fn python_token_count(source: &str) -> Result<usize, LexError> {
    Ok(lex_python(source)?
        .iter()
        .filter(|t| t.kind != PyTokenKind::Eof)
        .count())
}
