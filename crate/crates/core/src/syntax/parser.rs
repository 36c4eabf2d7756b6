//! Recursive-descent parser shared by both grammars.
//!
//! Python and SimPy differ only in how terms are spelled and how blocks and
//! statement boundaries are marked. Term tests go through [`Parser::at`],
//! which consults the dialect in SimPy mode; layout handling is split by
//! mode.

use crate::ast::*;
use crate::error::ParseError;
use crate::grammar::{Dialect, Spelling};
use crate::python::lexer::is_keyword;

use super::fstring;
use super::term::Term;
use super::token::{Tok, TokKind};

#[derive(Debug, Clone, Copy)]
pub enum Mode<'d> {
    Python,
    Simpy(&'d Dialect),
}

/// Determinism diagnostics gathered while parsing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ParseStats {
    /// Deepest token lookahead used by any decision.
    pub max_lookahead: usize,
    /// Times the parser rewound after a failed attempt.
    pub backtracks: usize,
    /// Decisions where more than one term matched the input.
    pub ambiguities: usize,
}

impl ParseStats {
    fn absorb(&mut self, other: ParseStats) {
        self.max_lookahead = self.max_lookahead.max(other.max_lookahead);
        self.backtracks += other.backtracks;
        self.ambiguities += other.ambiguities;
    }
}

type PResult<T> = Result<T, ParseError>;

const STATEMENT_TERMS: [Term; 19] = [
    Term::Def,
    Term::Class,
    Term::If,
    Term::While,
    Term::For,
    Term::Try,
    Term::With,
    Term::Return,
    Term::Pass,
    Term::Break,
    Term::Continue,
    Term::Raise,
    Term::Assert,
    Term::Import,
    Term::From,
    Term::Global,
    Term::Nonlocal,
    Term::Del,
    Term::Decorator,
];

const COMPARISON_TERMS: [Term; 10] = [
    Term::NotIn,
    Term::IsNot,
    Term::In,
    Term::Is,
    Term::Cmp(CmpOp::Eq),
    Term::Cmp(CmpOp::NotEq),
    Term::Cmp(CmpOp::LtE),
    Term::Cmp(CmpOp::GtE),
    Term::Cmp(CmpOp::Lt),
    Term::Cmp(CmpOp::Gt),
];

/// Lexes `source` for an f-string interpolation in the given mode.
pub type Relex<'d> = &'d dyn Fn(&str) -> PResult<Vec<Tok>>;

pub struct Parser<'d> {
    toks: Vec<Tok>,
    pos: usize,
    /// Python comments, keyed by the index of the token they precede.
    comments: Vec<(usize, Tok)>,
    next_comment: usize,
    mode: Mode<'d>,
    relex: Relex<'d>,
    /// Byte offset added to every span (non-zero for sub-parses).
    base: isize,
    stats: ParseStats,
}

impl<'d> Parser<'d> {
    pub fn new(tokens: Vec<Tok>, mode: Mode<'d>, relex: Relex<'d>) -> Self {
        let mut toks = Vec::with_capacity(tokens.len());
        let mut comments = Vec::new();
        for t in tokens {
            if t.kind == TokKind::Comment {
                comments.push((toks.len(), t));
            } else {
                toks.push(t);
            }
        }
        if toks.last().is_none_or(|t| t.kind != TokKind::Eof) {
            let end = toks.last().map_or(0, |t| t.span.end_byte);
            toks.push(Tok::eof(end));
        }
        Parser {
            toks,
            pos: 0,
            comments,
            next_comment: 0,
            mode,
            relex,
            base: 0,
            stats: ParseStats::default(),
        }
    }

    pub fn stats(&self) -> ParseStats {
        self.stats
    }

    fn is_simpy(&self) -> bool {
        matches!(self.mode, Mode::Simpy(_))
    }

    // ---- token access ----

    fn peek_at(&mut self, n: usize) -> &Tok {
        self.stats.max_lookahead = self.stats.max_lookahead.max(n + 1);
        let i = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[i]
    }

    fn peek(&mut self) -> &Tok {
        self.peek_at(0)
    }

    fn kind(&mut self) -> TokKind {
        self.peek().kind
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos.min(self.toks.len() - 1)].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn span(&self, s: SourceSpan) -> SourceSpan {
        let shift = |b: usize| (b as isize + self.base).max(0) as usize;
        SourceSpan::new(shift(s.start_byte), shift(s.end_byte))
    }

    fn here(&self) -> SourceSpan {
        self.span(self.toks[self.pos.min(self.toks.len() - 1)].span)
    }

    /// Span from token index `start` through the last consumed token.
    fn span_from(&self, start: usize) -> SourceSpan {
        let first = self.toks[start.min(self.toks.len() - 1)].span;
        let last = if self.pos > start {
            self.toks[self.pos - 1].span
        } else {
            first
        };
        self.span(first.to(last))
    }

    fn err<T>(&mut self, message: impl Into<String>) -> PResult<T> {
        let found = self.peek().describe();
        Err(ParseError::new(
            format!("{}, found {found}", message.into()),
            self.here(),
        ))
    }

    // ---- terms ----

    /// Number of tokens `term` spans at the cursor, if it is there.
    fn match_term(&mut self, term: Term) -> Option<usize> {
        match self.mode {
            Mode::Python => {
                let text = term.python();
                if text.is_empty() {
                    return None;
                }
                let mut n = 0;
                for piece in text.split(' ') {
                    let t = self.peek_at(n);
                    if !matches!(t.kind, TokKind::Keyword | TokKind::Op) || t.text != piece {
                        return None;
                    }
                    n += 1;
                }
                Some(n)
            }
            Mode::Simpy(d) => match d.spelling(term) {
                Spelling::Placeholder(p) => {
                    let t = self.peek();
                    (t.kind == TokKind::Placeholder && t.text == *p).then_some(1)
                }
                Spelling::Verbatim(pieces) => {
                    for (n, piece) in pieces.iter().enumerate() {
                        let t = self.peek_at(n);
                        if !matches!(t.kind, TokKind::Name | TokKind::Op) || t.text != *piece {
                            return None;
                        }
                    }
                    Some(pieces.len())
                }
                Spelling::Dropped | Spelling::Space => None,
            },
        }
    }

    fn at(&mut self, term: Term) -> bool {
        self.match_term(term).is_some()
    }

    fn eat(&mut self, term: Term) -> bool {
        match self.match_term(term) {
            Some(n) => {
                for _ in 0..n {
                    self.advance();
                }
                true
            }
            None => false,
        }
    }

    fn spelling(&self, term: Term) -> Option<&'d Spelling> {
        match self.mode {
            Mode::Python => None,
            Mode::Simpy(d) => Some(d.spelling(term)),
        }
    }

    /// Whether the term is written at all in the current grammar.
    fn spelled(&self, term: Term) -> bool {
        self.spelling(term).is_none_or(|s| !s.is_absent())
    }

    fn show(&self, term: Term) -> String {
        match self.spelling(term) {
            Some(s) => s.text(),
            None => term.python().to_string(),
        }
    }

    fn expect(&mut self, term: Term) -> PResult<()> {
        match self.spelling(term) {
            Some(Spelling::Dropped) => Ok(()),
            Some(Spelling::Space) => {
                self.eat_op(",");
                Ok(())
            }
            _ => {
                if self.eat(term) {
                    Ok(())
                } else {
                    let want = self.show(term);
                    self.err(format!("expected {want:?}"))
                        .map_err(|e| e.expected([want]))
                }
            }
        }
    }

    /// Longest matching term among `terms`.
    fn choose(&mut self, terms: &[Term]) -> Option<(Term, usize)> {
        let mut best: Option<(Term, usize)> = None;
        let mut matched = 0;
        for &t in terms {
            if let Some(n) = self.match_term(t) {
                matched += 1;
                if best.is_none_or(|(_, m)| n > m) {
                    best = Some((t, n));
                }
            }
        }
        if matched > 1 && self.is_simpy() {
            self.stats.ambiguities += 1;
        }
        best
    }

    fn is_op(&mut self, text: &str) -> bool {
        let t = self.peek();
        t.kind == TokKind::Op && t.text == text
    }

    fn eat_op(&mut self, text: &str) -> bool {
        if self.is_op(text) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn is_name(&mut self) -> bool {
        let simpy = self.is_simpy();
        let t = self.peek();
        t.kind == TokKind::Name && !(simpy && is_keyword(&t.text))
    }

    fn name(&mut self) -> PResult<String> {
        if self.is_name() {
            Ok(self.advance().text)
        } else {
            self.err("expected a name")
        }
    }

    fn dotted_name(&mut self) -> PResult<String> {
        let mut name = self.name()?;
        while self.at(Term::Dot) && {
            let t = self.peek_at(1);
            t.kind == TokKind::Name
        } {
            self.eat(Term::Dot);
            name.push('.');
            name.push_str(&self.name()?);
        }
        Ok(name)
    }

    fn reject_unsupported(&mut self) -> PResult<()> {
        let t = self.peek().clone();
        let unsupported = match (self.mode, t.kind) {
            (Mode::Python, TokKind::Keyword) => {
                matches!(t.text.as_str(), "async" | "await" | "yield")
            }
            (Mode::Python, TokKind::Op) => matches!(t.text.as_str(), ":=" | "..."),
            (Mode::Simpy(_), TokKind::Placeholder) => matches!(
                t.text.as_str(),
                "<yield>"
                    | "<walrus>"
                    | "<ellipsis>"
                    | "<match_stmt>"
                    | "<case_stmt>"
                    | "<type_stmt>"
                    | "<except_star_stmt>"
            ),
            _ => false,
        };
        if unsupported {
            return Err(ParseError::new(
                format!("unsupported syntax {:?}", t.text),
                self.span(t.span),
            ));
        }
        Ok(())
    }

    // ---- comments ----

    /// Moves Python comments preceding the cursor into `body`.
    fn drain_comments(&mut self, body: &mut Vec<Stmt>) {
        while let Some((at, tok)) = self.comments.get(self.next_comment) {
            if *at > self.pos {
                break;
            }
            let text = tok.text.strip_prefix('#').unwrap_or(&tok.text).trim_end();
            let placement = if tok.own_line {
                CommentPlacement::OwnLine
            } else {
                CommentPlacement::Trailing
            };
            body.push(Stmt::with_span(
                StmtKind::Comment(Comment {
                    text: text.to_string(),
                    placement,
                }),
                self.span(tok.span),
            ));
            self.next_comment += 1;
        }
    }

    /// SimPy comment statement: comment mark, payload, optional separator.
    fn simpy_comment(&mut self) -> PResult<Stmt> {
        let start = self.pos;
        let trailing = start > 0 && {
            let prev = start - 1;
            let saved = self.pos;
            self.pos = prev;
            let after_sep = self.at(Term::LineSep) || self.at(Term::BlockEnd);
            self.pos = saved;
            !after_sep
        };
        self.expect(Term::CommentMark)?;
        if self.kind() != TokKind::CommentText {
            return self.err("expected comment text");
        }
        let text = self.advance().text;
        self.eat(Term::LineSep);
        Ok(Stmt::with_span(
            StmtKind::Comment(Comment {
                text,
                placement: if trailing {
                    CommentPlacement::Trailing
                } else {
                    CommentPlacement::OwnLine
                },
            }),
            self.span_from(start),
        ))
    }

    // ---- module and blocks ----

    pub fn module(&mut self) -> PResult<Module> {
        let mut body = Vec::new();
        match self.mode {
            Mode::Python => loop {
                self.drain_comments(&mut body);
                match self.kind() {
                    TokKind::Eof => break,
                    TokKind::Indent => return self.err("unexpected indent"),
                    TokKind::Dedent => return self.err("unexpected dedent"),
                    TokKind::Newline => {
                        self.advance();
                    }
                    _ => self.python_statement(&mut body)?,
                }
            },
            Mode::Simpy(_) => loop {
                while self.eat(Term::LineSep) {}
                if self.kind() == TokKind::Eof {
                    break;
                }
                if self.at(Term::BlockEnd) {
                    let b = self.show(Term::BlockEnd);
                    return self.err(format!("unbalanced {b}"));
                }
                self.simpy_statement(&mut body)?;
            },
        }
        Ok(Module { body })
    }

    fn has_statement(body: &[Stmt]) -> bool {
        body.iter().any(|s| !s.is_comment())
    }

    /// `colon` then a block, in either layout.
    fn block(&mut self, colon: Term) -> PResult<Vec<Stmt>> {
        self.expect(colon)?;
        let start = self.pos;
        let mut body = Vec::new();
        match self.mode {
            Mode::Python => {
                if self.kind() == TokKind::Newline {
                    self.advance();
                    self.drain_comments(&mut body);
                    if self.kind() != TokKind::Indent {
                        return self.err("expected an indented block");
                    }
                    self.advance();
                    loop {
                        self.drain_comments(&mut body);
                        match self.kind() {
                            TokKind::Dedent => {
                                self.advance();
                                break;
                            }
                            TokKind::Eof => break,
                            TokKind::Indent => return self.err("unexpected indent"),
                            TokKind::Newline => {
                                self.advance();
                            }
                            _ => self.python_statement(&mut body)?,
                        }
                    }
                } else {
                    self.python_simple_line(&mut body)?;
                }
            }
            Mode::Simpy(_) => {
                if self.spelled(Term::BlockStart) && !self.eat(Term::BlockStart) {
                    let b = self.show(Term::BlockStart);
                    return self.err(format!("expected {b}")).map_err(|e| e.expected([b]));
                }
                loop {
                    while self.eat(Term::LineSep) {}
                    if self.eat(Term::BlockEnd) || self.kind() == TokKind::Eof {
                        break;
                    }
                    self.simpy_statement(&mut body)?;
                }
            }
        }
        if !Self::has_statement(&body) {
            return Err(ParseError::new("empty block", self.span_from(start)));
        }
        Ok(body)
    }

    /// True where a block's opening would be: the colon if it is written,
    /// otherwise the block start.
    fn at_suite(&mut self, colon: Term) -> bool {
        if self.spelled(colon) {
            self.at(colon)
        } else {
            self.at(Term::BlockStart)
        }
    }

    fn at_compound(&mut self) -> bool {
        [
            Term::Def,
            Term::Class,
            Term::If,
            Term::While,
            Term::For,
            Term::Try,
            Term::With,
            Term::Decorator,
        ]
        .into_iter()
        .any(|t| self.at(t))
    }

    fn python_statement(&mut self, body: &mut Vec<Stmt>) -> PResult<()> {
        self.reject_unsupported()?;
        if self.at_compound() {
            let s = self.compound()?;
            body.push(s);
            Ok(())
        } else {
            self.python_simple_line(body)
        }
    }

    /// `simple (';' simple)* [';'] NEWLINE`
    fn python_simple_line(&mut self, body: &mut Vec<Stmt>) -> PResult<()> {
        loop {
            self.reject_unsupported()?;
            body.push(self.simple()?);
            if self.eat(Term::Semicolon) {
                if matches!(self.kind(), TokKind::Newline | TokKind::Eof) {
                    break;
                }
                continue;
            }
            break;
        }
        match self.kind() {
            TokKind::Newline => {
                self.advance();
                Ok(())
            }
            TokKind::Eof => Ok(()),
            _ => self.err("expected end of statement"),
        }
    }

    fn simpy_statement(&mut self, body: &mut Vec<Stmt>) -> PResult<()> {
        self.reject_unsupported()?;
        if self.at(Term::CommentMark) {
            body.push(self.simpy_comment()?);
            return Ok(());
        }
        if self.at_compound() {
            body.push(self.compound()?);
            return Ok(());
        }
        body.push(self.simple()?);
        // A simple statement ends at a separator or where the next token
        // cannot continue it.
        if self.eat(Term::LineSep) {
            return Ok(());
        }
        if self.kind() == TokKind::Eof || self.at(Term::BlockEnd) || self.at(Term::CommentMark) {
            return Ok(());
        }
        let Mode::Simpy(d) = self.mode else { unreachable!() };
        if STATEMENT_TERMS
            .iter()
            .any(|&t| d.separator_optional_before(t) && self.at(t))
        {
            return Ok(());
        }
        let sep = self.show(Term::LineSep);
        self.err(format!("expected {sep}")).map_err(|e| e.expected([sep]))
    }

    /// Ends a decorator line.
    fn end_line(&mut self) -> PResult<()> {
        match self.mode {
            Mode::Python => {
                if self.kind() == TokKind::Newline {
                    self.advance();
                    Ok(())
                } else {
                    self.err("expected end of line")
                }
            }
            Mode::Simpy(_) => {
                while self.eat(Term::LineSep) {}
                Ok(())
            }
        }
    }

    // ---- compound statements ----

    fn opt_else(&mut self) -> PResult<Option<Vec<Stmt>>> {
        if self.eat(Term::Else) {
            Ok(Some(self.block(Term::ElseColon)?))
        } else {
            Ok(None)
        }
    }

    fn compound(&mut self) -> PResult<Stmt> {
        let start = self.pos;
        let mut decorators = Vec::new();
        while self.eat(Term::Decorator) {
            decorators.push(self.test()?);
            self.end_line()?;
        }
        let kind = if self.eat(Term::Def) {
            let name = self.name()?;
            let params = self.params(true)?;
            let returns = if self.eat(Term::Arrow) {
                Some(self.test()?)
            } else {
                None
            };
            let body = self.block(Term::DefColon)?;
            StmtKind::FunctionDef(FunctionDef {
                name,
                params,
                returns,
                decorators,
                body,
            })
        } else if self.eat(Term::Class) {
            let name = self.name()?;
            let (mut bases, mut keywords) = (Vec::new(), Vec::new());
            if self.eat(Term::LParen) {
                (bases, keywords) = self.call_args()?;
                self.expect(Term::RParen)?;
            }
            let body = self.block(Term::ClassColon)?;
            StmtKind::ClassDef(ClassDef {
                name,
                bases,
                keywords,
                decorators,
                body,
            })
        } else if !decorators.is_empty() {
            let (d, c) = (self.show(Term::Def), self.show(Term::Class));
            return self
                .err("expected a function or class after decorators")
                .map_err(|e| e.expected([d, c]));
        } else if self.eat(Term::If) {
            let test = self.test()?;
            let body = self.block(Term::IfColon)?;
            let mut elifs = Vec::new();
            while self.eat(Term::Elif) {
                let test = self.test()?;
                let body = self.block(Term::ElifColon)?;
                elifs.push(ElifClause { test, body });
            }
            let orelse = self.opt_else()?;
            StmtKind::If {
                test,
                body,
                elifs,
                orelse,
            }
        } else if self.eat(Term::While) {
            let test = self.test()?;
            let body = self.block(Term::WhileColon)?;
            let orelse = self.opt_else()?;
            StmtKind::While { test, body, orelse }
        } else if self.eat(Term::For) {
            let target = self.exprs(true)?;
            self.expect(Term::In)?;
            let iter = self.exprs(false)?;
            let body = self.block(Term::ForColon)?;
            let orelse = self.opt_else()?;
            StmtKind::For {
                target,
                iter,
                body,
                orelse,
            }
        } else if self.eat(Term::With) {
            let items = self.with_items()?;
            let body = self.block(Term::WithColon)?;
            StmtKind::With { items, body }
        } else if self.eat(Term::Try) {
            self.try_stmt()?
        } else {
            return self.err("expected a compound statement");
        };
        Ok(Stmt::with_span(kind, self.span_from(start)))
    }

    fn try_stmt(&mut self) -> PResult<StmtKind> {
        let body = self.block(Term::TryColon)?;
        let mut handlers = Vec::new();
        while self.eat(Term::Except) {
            let (kind, name) = if self.at_suite(Term::ExceptColon) {
                (None, None)
            } else {
                let kind = self.test()?;
                let name = if self.eat(Term::As) {
                    Some(self.name()?)
                } else {
                    None
                };
                (Some(kind), name)
            };
            let body = self.block(Term::ExceptColon)?;
            handlers.push(ExceptHandler { kind, name, body });
        }
        let orelse = if handlers.is_empty() {
            None
        } else {
            self.opt_else()?
        };
        let finalbody = if self.eat(Term::Finally) {
            Some(self.block(Term::FinallyColon)?)
        } else {
            None
        };
        if handlers.is_empty() && finalbody.is_none() {
            let (e, f) = (self.show(Term::Except), self.show(Term::Finally));
            return self
                .err("expected except or finally")
                .map_err(|err| err.expected([e, f]));
        }
        Ok(StmtKind::Try {
            body,
            handlers,
            orelse,
            finalbody,
        })
    }

    fn with_item(&mut self) -> PResult<WithItem> {
        let context = self.test()?;
        let target = if self.eat(Term::As) {
            Some(self.test()?)
        } else {
            None
        };
        Ok(WithItem { context, target })
    }

    fn with_items(&mut self) -> PResult<Vec<WithItem>> {
        if !self.is_simpy() && self.at(Term::LParen) {
            // `with (a as b, c):` groups items; fall back to reading the
            // parenthesis as part of the first expression.
            let (saved, saved_stats) = (self.pos, self.stats);
            if let Ok(items) = self.parenthesized_with_items() {
                return Ok(items);
            }
            self.pos = saved;
            self.stats = saved_stats;
            self.stats.backtracks += 1;
        }
        let mut items = vec![self.with_item()?];
        loop {
            if self.at_suite(Term::WithColon) {
                break;
            }
            if self.spelled(Term::WithComma) {
                if !self.eat(Term::WithComma) {
                    break;
                }
            } else {
                self.eat_op(",");
            }
            items.push(self.with_item()?);
        }
        Ok(items)
    }

    fn parenthesized_with_items(&mut self) -> PResult<Vec<WithItem>> {
        self.expect(Term::LParen)?;
        let mut items = vec![self.with_item()?];
        while self.eat(Term::WithComma) {
            if self.at(Term::RParen) {
                break;
            }
            items.push(self.with_item()?);
        }
        self.expect(Term::RParen)?;
        if !self.at(Term::WithColon) {
            return self.err("expected ':' after parenthesized with items");
        }
        Ok(items)
    }

    // ---- parameters ----

    fn at_param_start(&mut self, def: bool) -> bool {
        if self.is_name() || self.at(Term::PosOnly) || self.at(Term::DoubleStar) {
            return true;
        }
        if def {
            self.at(Term::VarArg) || self.at(Term::KwOnly)
        } else {
            self.at(Term::Star)
        }
    }

    fn params_end(&mut self, def: bool) -> bool {
        if !def {
            return self.at(Term::LambdaColon);
        }
        if self.spelled(Term::DefRParen) {
            self.at(Term::DefRParen)
        } else {
            // Nothing after an undelimited list starts with `,`.
            !self.is_op(",") && !self.at_param_start(true)
        }
    }

    fn param(&mut self, def: bool) -> PResult<Param> {
        let name = self.name()?;
        let annotation = if def && self.eat(Term::AnnColon) {
            Some(self.test()?)
        } else {
            None
        };
        let default = if self.eat(Term::KwEq) || self.eat(Term::Assign) {
            Some(self.test()?)
        } else {
            None
        };
        Ok(Param {
            name,
            annotation,
            default,
        })
    }

    fn bare_param(&mut self, def: bool) -> PResult<Param> {
        let name = self.name()?;
        let annotation = if def && self.eat(Term::AnnColon) {
            Some(self.test()?)
        } else {
            None
        };
        Ok(Param {
            name,
            annotation,
            default: None,
        })
    }

    pub fn params(&mut self, def: bool) -> PResult<Params> {
        let sep = if def { Term::DefComma } else { Term::Comma };
        if def {
            self.expect(Term::DefLParen)?;
        }
        let mut p = Params::default();
        let mut star_seen = false;
        while !self.params_end(def) {
            if self.eat(Term::PosOnly) {
                if star_seen || !p.posonly.is_empty() || p.args.is_empty() {
                    return self.err("misplaced '/' marker");
                }
                p.posonly = std::mem::take(&mut p.args);
            } else if self.eat(Term::DoubleStar) {
                p.kwarg = Some(self.bare_param(def)?);
            } else if let Some(is_vararg) = self.star_marker(def) {
                if star_seen {
                    return self.err("duplicate '*' marker");
                }
                star_seen = true;
                if is_vararg {
                    p.vararg = Some(self.bare_param(def)?);
                }
            } else if self.is_name() {
                if p.kwarg.is_some() {
                    return self.err("parameter after '**' parameter");
                }
                let param = self.param(def)?;
                if star_seen {
                    p.kwonly.push(param);
                } else {
                    p.args.push(param);
                }
            } else {
                return self.err("expected a parameter");
            }
            if self.params_end(def) {
                break;
            }
            if self.spelled(sep) {
                if !self.eat(sep) {
                    let s = self.show(sep);
                    return self.err(format!("expected {s:?}")).map_err(|e| e.expected([s]));
                }
            } else {
                self.eat_op(",");
            }
        }
        if def {
            self.expect(Term::DefRParen)?;
        }
        if star_seen && p.vararg.is_none() && p.kwonly.is_empty() {
            return self.err("named parameters must follow bare '*'");
        }
        Ok(p)
    }

    /// Consumes a `*` marker. `Some(true)` when it introduces `*args`.
    fn star_marker(&mut self, def: bool) -> Option<bool> {
        if !def {
            if !self.eat(Term::Star) {
                return None;
            }
            return Some(self.is_name());
        }
        let vararg = self.match_term(Term::VarArg);
        let kwonly = self.match_term(Term::KwOnly);
        match (vararg, kwonly) {
            (Some(n), Some(m)) if n == m => {
                if self.is_simpy() && self.spelling(Term::VarArg) == self.spelling(Term::KwOnly) {
                    self.stats.ambiguities += 1;
                }
                self.eat(Term::VarArg);
                Some(self.is_name())
            }
            (Some(n), Some(m)) if m > n => {
                self.eat(Term::KwOnly);
                Some(false)
            }
            (Some(_), _) => {
                self.eat(Term::VarArg);
                Some(true)
            }
            (None, Some(_)) => {
                self.eat(Term::KwOnly);
                Some(false)
            }
            (None, None) => None,
        }
    }

    // ---- simple statements ----

    fn simple(&mut self) -> PResult<Stmt> {
        let start = self.pos;
        let kind = self.simple_kind()?;
        Ok(Stmt::with_span(kind, self.span_from(start)))
    }

    fn simple_kind(&mut self) -> PResult<StmtKind> {
        if self.eat(Term::Pass) {
            return Ok(StmtKind::Pass);
        }
        if self.eat(Term::Break) {
            return Ok(StmtKind::Break);
        }
        if self.eat(Term::Continue) {
            return Ok(StmtKind::Continue);
        }
        if self.eat(Term::Return) {
            let value = if self.starts_expr() {
                Some(self.exprs(false)?)
            } else {
                None
            };
            return Ok(StmtKind::Return(value));
        }
        if self.eat(Term::Raise) {
            let mut exc = None;
            let mut cause = None;
            if self.starts_expr() {
                exc = Some(self.test()?);
                if self.eat(Term::RaiseFrom) {
                    cause = Some(self.test()?);
                }
            }
            return Ok(StmtKind::Raise { exc, cause });
        }
        if self.eat(Term::Assert) {
            let test = self.test()?;
            let msg = if self.eat(Term::Comma) {
                Some(self.test()?)
            } else {
                None
            };
            return Ok(StmtKind::Assert { test, msg });
        }
        if self.at(Term::Global) || self.at(Term::Nonlocal) {
            let global = self.eat(Term::Global);
            if !global {
                self.eat(Term::Nonlocal);
            }
            let mut names = vec![self.name()?];
            while self.eat(Term::Comma) {
                names.push(self.name()?);
            }
            return Ok(if global {
                StmtKind::Global(names)
            } else {
                StmtKind::Nonlocal(names)
            });
        }
        if self.eat(Term::Del) {
            let mut targets = vec![self.test()?];
            while self.eat(Term::Comma) {
                if !self.starts_expr() {
                    break;
                }
                targets.push(self.test()?);
            }
            return Ok(StmtKind::Delete(targets));
        }
        if self.eat(Term::Import) {
            let mut names = vec![self.alias(true)?];
            while self.eat(Term::Comma) {
                names.push(self.alias(true)?);
            }
            return Ok(StmtKind::Import(names));
        }
        if self.eat(Term::From) {
            return self.import_from();
        }
        self.expr_stmt()
    }

    fn alias(&mut self, dotted: bool) -> PResult<Alias> {
        let name = if dotted { self.dotted_name()? } else { self.name()? };
        let asname = if self.eat(Term::As) {
            Some(self.name()?)
        } else {
            None
        };
        Ok(Alias { name, asname })
    }

    fn import_from(&mut self) -> PResult<StmtKind> {
        let mut level = 0u32;
        loop {
            if self.eat(Term::ImportDot) {
                level += 1;
            } else if !self.is_simpy() && self.eat_op("...") {
                level += 3;
            } else {
                break;
            }
        }
        let module = if self.is_name() {
            let m = self.dotted_name()?;
            self.expect(Term::FromImport)?;
            Some(m)
        } else if level > 0 {
            self.expect(Term::RelativeImport)?;
            None
        } else {
            return self.err("expected a module name");
        };
        let names = if self.eat(Term::Star) {
            vec![Alias {
                name: "*".into(),
                asname: None,
            }]
        } else if !self.is_simpy() && self.eat(Term::LParen) {
            let mut names = vec![self.alias(false)?];
            while self.eat(Term::Comma) {
                if self.at(Term::RParen) {
                    break;
                }
                names.push(self.alias(false)?);
            }
            self.expect(Term::RParen)?;
            names
        } else {
            let mut names = vec![self.alias(false)?];
            while self.eat(Term::Comma) {
                names.push(self.alias(false)?);
            }
            names
        };
        Ok(StmtKind::ImportFrom { level, module, names })
    }

    fn expr_stmt(&mut self) -> PResult<StmtKind> {
        let first = self.exprs(false)?;
        if self.at(Term::Assign) {
            let mut targets = vec![first];
            let mut value;
            loop {
                self.expect(Term::Assign)?;
                value = self.exprs(false)?;
                if !self.at(Term::Assign) {
                    break;
                }
                targets.push(value);
            }
            return Ok(StmtKind::Assign { targets, value });
        }
        if self.at(Term::AnnColon) {
            self.expect(Term::AnnColon)?;
            let annotation = self.test()?;
            let value = if self.eat(Term::Assign) {
                Some(self.exprs(false)?)
            } else {
                None
            };
            return Ok(StmtKind::AnnAssign {
                target: first,
                annotation,
                value,
            });
        }
        let aug: Vec<Term> = BinOpKind::ALL.iter().map(|&op| Term::Aug(op)).collect();
        if let Some((Term::Aug(op), _)) = self.choose(&aug) {
            self.eat(Term::Aug(op));
            let value = self.exprs(false)?;
            return Ok(StmtKind::AugAssign {
                target: first,
                op,
                value,
            });
        }
        Ok(StmtKind::Expr(first))
    }

    // ---- expressions ----

    fn starts_expr(&mut self) -> bool {
        if self.is_name() || matches!(self.kind(), TokKind::Number | TokKind::String) {
            return true;
        }
        [
            Term::True,
            Term::False,
            Term::None,
            Term::Not,
            Term::Lambda,
            Term::UMinus,
            Term::UPlus,
            Term::Invert,
            Term::Star,
            Term::LParen,
            Term::LBracket,
            Term::LBrace,
        ]
        .into_iter()
        .any(|t| self.at(t))
    }

    /// Comma-separated expressions where an unparenthesized tuple is
    /// allowed. `targets` parses at `for`-target strength so that `in` ends
    /// the list.
    fn exprs(&mut self, targets: bool) -> PResult<Expr> {
        let start = self.pos;
        let first = self.star_or(targets)?;
        if !self.at(Term::Comma) {
            return Ok(first);
        }
        let mut items = vec![first];
        while self.eat(Term::Comma) {
            if !self.starts_expr() {
                break;
            }
            items.push(self.star_or(targets)?);
        }
        Ok(Expr::with_span(ExprKind::Tuple(items), self.span_from(start)))
    }

    fn star_or(&mut self, bor: bool) -> PResult<Expr> {
        let start = self.pos;
        if self.eat(Term::Star) {
            let value = self.bor()?;
            return Ok(Expr::with_span(
                ExprKind::Starred(Box::new(value)),
                self.span_from(start),
            ));
        }
        if bor {
            self.bor()
        } else {
            self.test()
        }
    }

    pub fn test(&mut self) -> PResult<Expr> {
        self.reject_unsupported()?;
        if self.at(Term::Lambda) {
            return self.lambda();
        }
        let start = self.pos;
        let body = self.or_test()?;
        if self.eat(Term::ExprIf) {
            let test = self.or_test()?;
            self.expect(Term::ExprElse)?;
            let orelse = self.test()?;
            return Ok(Expr::with_span(
                ExprKind::IfExp {
                    test: Box::new(test),
                    body: Box::new(body),
                    orelse: Box::new(orelse),
                },
                self.span_from(start),
            ));
        }
        Ok(body)
    }

    fn lambda(&mut self) -> PResult<Expr> {
        let start = self.pos;
        self.expect(Term::Lambda)?;
        let params = self.params(false)?;
        self.expect(Term::LambdaColon)?;
        let body = self.test()?;
        Ok(Expr::with_span(
            ExprKind::Lambda {
                params: Box::new(params),
                body: Box::new(body),
            },
            self.span_from(start),
        ))
    }

    fn bool_level(
        &mut self,
        term: Term,
        op: BoolOpKind,
        next: fn(&mut Self) -> PResult<Expr>,
    ) -> PResult<Expr> {
        let start = self.pos;
        let first = next(self)?;
        if !self.at(term) {
            return Ok(first);
        }
        let mut values = vec![first];
        while self.eat(term) {
            values.push(next(self)?);
        }
        Ok(Expr::with_span(
            ExprKind::BoolOp { op, values },
            self.span_from(start),
        ))
    }

    fn or_test(&mut self) -> PResult<Expr> {
        self.bool_level(Term::Or, BoolOpKind::Or, Self::and_test)
    }

    fn and_test(&mut self) -> PResult<Expr> {
        self.bool_level(Term::And, BoolOpKind::And, Self::not_test)
    }

    fn not_test(&mut self) -> PResult<Expr> {
        let start = self.pos;
        if self.eat(Term::Not) {
            let operand = self.not_test()?;
            return Ok(Expr::with_span(
                ExprKind::UnaryOp {
                    op: UnaryOpKind::Not,
                    operand: Box::new(operand),
                },
                self.span_from(start),
            ));
        }
        self.comparison()
    }

    fn comparison(&mut self) -> PResult<Expr> {
        let start = self.pos;
        let left = self.bor()?;
        let mut ops = Vec::new();
        while let Some((term, _)) = self.choose(&COMPARISON_TERMS) {
            self.eat(term);
            let op = match term {
                Term::NotIn => CmpOp::NotIn,
                Term::IsNot => CmpOp::IsNot,
                Term::In => CmpOp::In,
                Term::Is => CmpOp::Is,
                Term::Cmp(op) => op,
                _ => unreachable!(),
            };
            ops.push((op, self.bor()?));
        }
        if ops.is_empty() {
            return Ok(left);
        }
        Ok(Expr::with_span(
            ExprKind::Compare {
                left: Box::new(left),
                ops,
            },
            self.span_from(start),
        ))
    }

    fn binary_level(&mut self, ops: &[BinOpKind], next: fn(&mut Self) -> PResult<Expr>) -> PResult<Expr> {
        let start = self.pos;
        let mut left = next(self)?;
        let terms: Vec<Term> = ops.iter().map(|&op| Term::Bin(op)).collect();
        while let Some((Term::Bin(op), _)) = self.choose(&terms) {
            self.eat(Term::Bin(op));
            let right = next(self)?;
            left = Expr::with_span(
                ExprKind::BinOp {
                    left: Box::new(left),
                    op,
                    right: Box::new(right),
                },
                self.span_from(start),
            );
        }
        Ok(left)
    }

    fn bor(&mut self) -> PResult<Expr> {
        self.binary_level(&[BinOpKind::BitOr], Self::bxor)
    }

    fn bxor(&mut self) -> PResult<Expr> {
        self.binary_level(&[BinOpKind::BitXor], Self::band)
    }

    fn band(&mut self) -> PResult<Expr> {
        self.binary_level(&[BinOpKind::BitAnd], Self::shift)
    }

    fn shift(&mut self) -> PResult<Expr> {
        self.binary_level(&[BinOpKind::LShift, BinOpKind::RShift], Self::arith)
    }

    fn arith(&mut self) -> PResult<Expr> {
        self.binary_level(&[BinOpKind::Add, BinOpKind::Sub], Self::term)
    }

    fn term(&mut self) -> PResult<Expr> {
        self.binary_level(
            &[
                BinOpKind::Mult,
                BinOpKind::MatMult,
                BinOpKind::Div,
                BinOpKind::Mod,
                BinOpKind::FloorDiv,
            ],
            Self::factor,
        )
    }

    fn factor(&mut self) -> PResult<Expr> {
        let start = self.pos;
        let op = if self.eat(Term::UMinus) {
            UnaryOpKind::USub
        } else if self.eat(Term::UPlus) {
            UnaryOpKind::UAdd
        } else if self.eat(Term::Invert) {
            UnaryOpKind::Invert
        } else {
            return self.power();
        };
        let operand = self.factor()?;
        Ok(Expr::with_span(
            ExprKind::UnaryOp {
                op,
                operand: Box::new(operand),
            },
            self.span_from(start),
        ))
    }

    fn power(&mut self) -> PResult<Expr> {
        let start = self.pos;
        let base = self.primary()?;
        if self.eat(Term::Bin(BinOpKind::Pow)) {
            let exp = self.factor()?;
            return Ok(Expr::with_span(
                ExprKind::BinOp {
                    left: Box::new(base),
                    op: BinOpKind::Pow,
                    right: Box::new(exp),
                },
                self.span_from(start),
            ));
        }
        Ok(base)
    }

    fn primary(&mut self) -> PResult<Expr> {
        let start = self.pos;
        let mut e = self.atom()?;
        loop {
            if self.at(Term::Dot) {
                self.eat(Term::Dot);
                let attr = self.name()?;
                e = Expr::with_span(
                    ExprKind::Attribute {
                        value: Box::new(e),
                        attr,
                    },
                    self.span_from(start),
                );
            } else if self.eat(Term::LParen) {
                let (args, keywords) = self.call_args()?;
                self.expect(Term::RParen)?;
                e = Expr::with_span(
                    ExprKind::Call {
                        func: Box::new(e),
                        args,
                        keywords,
                    },
                    self.span_from(start),
                );
            } else if self.eat(Term::LBracket) {
                let index = self.subscript()?;
                self.expect(Term::RBracket)?;
                e = Expr::with_span(
                    ExprKind::Subscript {
                        value: Box::new(e),
                        index: Box::new(index),
                    },
                    self.span_from(start),
                );
            } else {
                return Ok(e);
            }
        }
    }

    /// Arguments up to (not including) the closing parenthesis.
    fn call_args(&mut self) -> PResult<(Vec<Expr>, Vec<Keyword>)> {
        let mut args = Vec::new();
        let mut keywords = Vec::new();
        let mut first = true;
        while !self.at(Term::RParen) {
            let start = self.pos;
            if self.eat(Term::Star) {
                let value = self.test()?;
                args.push(Expr::with_span(
                    ExprKind::Starred(Box::new(value)),
                    self.span_from(start),
                ));
            } else if self.eat(Term::DoubleStar) {
                let value = self.test()?;
                keywords.push(Keyword { arg: None, value });
            } else if self.is_name() && {
                let t = self.peek_at(1);
                t.kind == TokKind::Op && t.text == "="
            } {
                let arg = self.name()?;
                self.expect(Term::KwEq)?;
                let value = self.test()?;
                keywords.push(Keyword {
                    arg: Some(arg),
                    value,
                });
            } else {
                let value = self.test()?;
                if first && self.at(Term::CompFor) {
                    let generators = self.generators()?;
                    args.push(Expr::with_span(
                        ExprKind::GenExp {
                            elt: Box::new(value),
                            generators,
                        },
                        self.span_from(start),
                    ));
                    if !self.at(Term::RParen) {
                        return self.err("generator argument must be the only argument");
                    }
                    break;
                }
                args.push(value);
            }
            first = false;
            if !self.eat(Term::Comma) {
                break;
            }
        }
        Ok((args, keywords))
    }

    fn slice_item(&mut self) -> PResult<Expr> {
        let start = self.pos;
        if self.eat(Term::Star) {
            let value = self.bor()?;
            return Ok(Expr::with_span(
                ExprKind::Starred(Box::new(value)),
                self.span_from(start),
            ));
        }
        let lower = if self.at(Term::SliceColon) {
            None
        } else {
            Some(self.test()?)
        };
        if !self.eat(Term::SliceColon) {
            return Ok(lower.expect("parsed above"));
        }
        let bound = |p: &mut Self| -> PResult<Option<Box<Expr>>> {
            if p.at(Term::SliceColon) || p.at(Term::Comma) || p.at(Term::RBracket) {
                Ok(None)
            } else {
                Ok(Some(Box::new(p.test()?)))
            }
        };
        let upper = bound(self)?;
        let step = if self.eat(Term::SliceColon) {
            bound(self)?
        } else {
            None
        };
        Ok(Expr::with_span(
            ExprKind::Slice {
                lower: lower.map(Box::new),
                upper,
                step,
            },
            self.span_from(start),
        ))
    }

    fn subscript(&mut self) -> PResult<Expr> {
        let start = self.pos;
        let first = self.slice_item()?;
        if !self.at(Term::Comma) {
            return Ok(first);
        }
        let mut items = vec![first];
        while self.eat(Term::Comma) {
            if self.at(Term::RBracket) {
                break;
            }
            items.push(self.slice_item()?);
        }
        Ok(Expr::with_span(ExprKind::Tuple(items), self.span_from(start)))
    }

    fn generators(&mut self) -> PResult<Vec<Comprehension>> {
        let mut out = Vec::new();
        while self.eat(Term::CompFor) {
            let target = self.exprs(true)?;
            self.expect(Term::In)?;
            let iter = self.or_test()?;
            let mut ifs = Vec::new();
            while self.eat(Term::ExprIf) {
                ifs.push(self.or_test()?);
            }
            out.push(Comprehension { target, iter, ifs });
        }
        Ok(out)
    }

    /// Items of a list, tuple or set display up to the closing bracket.
    fn display_items(&mut self, first: Expr, close: Term) -> PResult<Vec<Expr>> {
        let mut items = vec![first];
        while self.eat(Term::Comma) {
            if self.at(close) {
                break;
            }
            items.push(self.star_or(false)?);
        }
        Ok(items)
    }

    fn atom(&mut self) -> PResult<Expr> {
        self.reject_unsupported()?;
        let start = self.pos;
        let kind = match self.kind() {
            TokKind::Name if self.is_name() => ExprKind::Name(self.advance().text),
            TokKind::Number => {
                let raw = self.advance().text;
                let lower = raw.to_ascii_lowercase();
                let hex = lower.starts_with("0x");
                if lower.contains('.') || (!hex && lower.contains('e')) || lower.ends_with('j') {
                    ExprKind::Float(raw)
                } else {
                    ExprKind::Int(raw)
                }
            }
            TokKind::String => ExprKind::Str(self.strings()?),
            _ => {
                if self.eat(Term::True) {
                    ExprKind::Bool(true)
                } else if self.eat(Term::False) {
                    ExprKind::Bool(false)
                } else if self.eat(Term::None) {
                    ExprKind::NoneLit
                } else if self.eat(Term::LParen) {
                    return self.paren(start);
                } else if self.eat(Term::LBracket) {
                    if self.eat(Term::RBracket) {
                        ExprKind::List(Vec::new())
                    } else {
                        let first = self.star_or(false)?;
                        let kind = if self.at(Term::CompFor) {
                            ExprKind::ListComp {
                                elt: Box::new(first),
                                generators: self.generators()?,
                            }
                        } else {
                            ExprKind::List(self.display_items(first, Term::RBracket)?)
                        };
                        self.expect(Term::RBracket)?;
                        kind
                    }
                } else if self.eat(Term::LBrace) {
                    let kind = self.brace()?;
                    self.expect(Term::RBrace)?;
                    kind
                } else {
                    return self.err("expected an expression");
                }
            }
        };
        Ok(Expr::with_span(kind, self.span_from(start)))
    }

    fn paren(&mut self, start: usize) -> PResult<Expr> {
        if self.eat(Term::RParen) {
            return Ok(Expr::with_span(
                ExprKind::Tuple(Vec::new()),
                self.span_from(start),
            ));
        }
        let first = self.star_or(false)?;
        let e = if self.at(Term::CompFor) {
            let generators = self.generators()?;
            Expr::with_span(
                ExprKind::GenExp {
                    elt: Box::new(first),
                    generators,
                },
                self.span_from(start),
            )
        } else if self.at(Term::Comma) {
            let items = self.display_items(first, Term::RParen)?;
            Expr::with_span(ExprKind::Tuple(items), self.span_from(start))
        } else {
            if matches!(first.kind, ExprKind::Starred(_)) {
                return self.err("starred expression needs a tuple");
            }
            first
        };
        self.expect(Term::RParen)?;
        Ok(e)
    }

    fn brace(&mut self) -> PResult<ExprKind> {
        if self.at(Term::RBrace) {
            return Ok(ExprKind::Dict(Vec::new()));
        }
        let first_item = |p: &mut Self| -> PResult<Option<DictItem>> {
            if p.eat(Term::DoubleStar) {
                return Ok(Some(DictItem::Unpack(p.bor()?)));
            }
            Ok(None)
        };
        if let Some(item) = first_item(self)? {
            return Ok(ExprKind::Dict(self.dict_rest(item)?));
        }
        let first = self.star_or(false)?;
        if self.eat(Term::DictColon) {
            let value = self.test()?;
            if self.at(Term::CompFor) {
                return Ok(ExprKind::DictComp {
                    key: Box::new(first),
                    value: Box::new(value),
                    generators: self.generators()?,
                });
            }
            return Ok(ExprKind::Dict(self.dict_rest(DictItem::Pair(first, value))?));
        }
        if self.at(Term::CompFor) {
            return Ok(ExprKind::SetComp {
                elt: Box::new(first),
                generators: self.generators()?,
            });
        }
        Ok(ExprKind::Set(self.display_items(first, Term::RBrace)?))
    }

    fn dict_rest(&mut self, first: DictItem) -> PResult<Vec<DictItem>> {
        let mut items = vec![first];
        while self.eat(Term::Comma) {
            if self.at(Term::RBrace) {
                break;
            }
            if self.eat(Term::DoubleStar) {
                items.push(DictItem::Unpack(self.bor()?));
            } else {
                let key = self.test()?;
                self.expect(Term::DictColon)?;
                let value = self.test()?;
                items.push(DictItem::Pair(key, value));
            }
        }
        Ok(items)
    }

    /// Adjacent string literals, joined by the concatenation term where it
    /// is spelled.
    fn strings(&mut self) -> PResult<Vec<StrPart>> {
        let mut parts = Vec::new();
        loop {
            let tok = self.advance();
            parts.push(self.string_part(&tok)?);
            let joined = if self.at(Term::Concat) {
                let next = self.peek_at(1).kind;
                next == TokKind::String && self.eat(Term::Concat)
            } else {
                self.kind() == TokKind::String
            };
            if !joined {
                break;
            }
        }
        Ok(parts)
    }

    fn string_part(&mut self, tok: &Tok) -> PResult<StrPart> {
        if !fstring::is_fstring(&tok.text) {
            return Ok(StrPart::Plain(tok.text.clone()));
        }
        let base = self.span(tok.span).start_byte;
        let (mode, relex) = (self.mode, self.relex);
        let mut sub_stats = ParseStats::default();
        let lowered = fstring::lower(&tok.text, base, &mut |src, offset| {
            let (e, stats) = parse_interpolation(src, offset, mode, relex)?;
            sub_stats.absorb(stats);
            Ok(e)
        })?;
        self.stats.absorb(sub_stats);
        Ok(StrPart::Formatted(lowered))
    }
}

/// Parses an f-string interpolation's source as a parenthesized expression.
fn parse_interpolation(
    src: &str,
    offset: usize,
    mode: Mode<'_>,
    relex: Relex<'_>,
) -> PResult<(Expr, ParseStats)> {
    let wrapped = format!("({src})");
    let shift = |e: ParseError| {
        let fix = |b: usize| (b + offset).saturating_sub(1);
        ParseError {
            span: SourceSpan::new(fix(e.span.start_byte), fix(e.span.end_byte)),
            ..e
        }
    };
    let toks = relex(&wrapped).map_err(shift)?;
    let mut p = Parser::new(toks, mode, relex);
    p.base = offset as isize - 1;
    if !p.comments.is_empty() {
        return Err(ParseError::new(
            "comment inside f-string interpolation",
            SourceSpan::new(offset, offset + src.len()),
        ));
    }
    let e = p.test()?;
    while p.kind() == TokKind::Newline {
        p.advance();
    }
    if p.kind() != TokKind::Eof {
        return p.err("unexpected token in f-string interpolation");
    }
    Ok((e, p.stats()))
}
