//! SimPy frontend: tokenizer, parser and emitter over the shared AST.

pub mod lexer;
mod render;

use crate::ast::Module;
use crate::error::{EmitError, LexError, ParseError};
use crate::grammar::{Dialect, GrammarTokenTable};
use crate::syntax::parser::{Mode, ParseStats, Parser};
use crate::syntax::token::{Tok, TokKind};

pub use lexer::{lex_simpy_with, SimpyToken, SimpyTokenKind};
pub use render::emit_simpy_with;

pub fn lex_simpy(source: &str, table: &GrammarTokenTable) -> Result<Vec<SimpyToken>, LexError> {
    lex_simpy_with(source, table.dialect())
}

fn tokens(source: &str, dialect: &Dialect) -> Result<Vec<Tok>, LexError> {
    Ok(lex_simpy_with(source, dialect)?
        .into_iter()
        .map(|t| Tok {
            kind: match t.kind {
                SimpyTokenKind::Placeholder => TokKind::Placeholder,
                SimpyTokenKind::Identifier => TokKind::Name,
                SimpyTokenKind::Number => TokKind::Number,
                SimpyTokenKind::String => TokKind::String,
                SimpyTokenKind::Symbol => TokKind::Op,
                SimpyTokenKind::CommentText => TokKind::CommentText,
                SimpyTokenKind::Eof => TokKind::Eof,
            },
            text: t.text,
            span: t.span,
            own_line: false,
        })
        .collect())
}

pub fn parse_simpy(source: &str, table: &GrammarTokenTable) -> Result<Module, ParseError> {
    parse_simpy_with_stats(source, table).map(|(m, _)| m)
}

pub fn parse_simpy_with_stats(
    source: &str,
    table: &GrammarTokenTable,
) -> Result<(Module, ParseStats), ParseError> {
    let dialect = table.dialect();
    let relex = |src: &str| -> Result<Vec<Tok>, ParseError> { Ok(tokens(src, dialect)?) };
    let mut parser = Parser::new(tokens(source, dialect)?, Mode::Simpy(dialect), &relex);
    let module = parser.module()?;
    Ok((module, parser.stats()))
}

pub fn emit_simpy(module: &Module, table: &GrammarTokenTable) -> Result<String, EmitError> {
    emit_simpy_with(module, table.dialect())
}

/// Number of SimPy lexical tokens, end marker excluded.
pub fn simpy_token_count(source: &str, table: &GrammarTokenTable) -> Result<usize, LexError> {
    Ok(lex_simpy(source, table)?
        .iter()
        .filter(|t| t.kind != SimpyTokenKind::Eof)
        .count())
}
