//! AST to lexeme stream.
//!
//! The stream carries structure only; the Python and SimPy renderers decide
//! spelling and spacing. Parenthesization is decided here, once, so both
//! grammars agree on it.

use crate::ast::*;

use super::term::{cmp_term, Term};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lex<'a> {
    Term(Term),
    Name(&'a str),
    Num(&'a str),
    Str(&'a str),
    FStr(&'a FString),
    Comment(&'a str),
    /// Ends a comment; unlike `LineSep` it is never elided mid-stream.
    CommentEnd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Python,
    Simpy,
}

// Binding strength, loosest first.
pub const P_TUPLE: u8 = 0;
pub const P_LAMBDA: u8 = 1;
pub const P_IFEXP: u8 = 2;
pub const P_OR: u8 = 3;
pub const P_AND: u8 = 4;
pub const P_NOT: u8 = 5;
pub const P_CMP: u8 = 6;
pub const P_BOR: u8 = 7;
pub const P_BXOR: u8 = 8;
pub const P_BAND: u8 = 9;
pub const P_SHIFT: u8 = 10;
pub const P_ARITH: u8 = 11;
pub const P_TERM: u8 = 12;
pub const P_UNARY: u8 = 13;
pub const P_POWER: u8 = 14;
pub const P_AWAIT: u8 = 15;
pub const P_PRIMARY: u8 = 16;
pub const P_ATOM: u8 = 17;

/// Minimum strength for an ordinary expression operand (`test` in Python's
/// grammar): lambdas and conditionals allowed, bare tuples not.
pub const P_TEST: u8 = P_LAMBDA;

pub fn binop_prec(op: BinOpKind) -> u8 {
    match op {
        BinOpKind::BitOr => P_BOR,
        BinOpKind::BitXor => P_BXOR,
        BinOpKind::BitAnd => P_BAND,
        BinOpKind::LShift | BinOpKind::RShift => P_SHIFT,
        BinOpKind::Add | BinOpKind::Sub => P_ARITH,
        BinOpKind::Mult | BinOpKind::MatMult | BinOpKind::Div | BinOpKind::Mod | BinOpKind::FloorDiv => {
            P_TERM
        }
        BinOpKind::Pow => P_POWER,
    }
}

pub fn prec(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Tuple(_) => P_TUPLE,
        ExprKind::Lambda { .. } => P_LAMBDA,
        ExprKind::IfExp { .. } => P_IFEXP,
        ExprKind::BoolOp { op, .. } => match op {
            BoolOpKind::Or => P_OR,
            BoolOpKind::And => P_AND,
        },
        ExprKind::UnaryOp { op, .. } => match op {
            UnaryOpKind::Not => P_NOT,
            _ => P_UNARY,
        },
        ExprKind::Compare { .. } => P_CMP,
        ExprKind::BinOp { op, .. } => binop_prec(*op),
        ExprKind::Call { .. } | ExprKind::Attribute { .. } | ExprKind::Subscript { .. } => P_PRIMARY,
        _ => P_ATOM,
    }
}

pub struct Writer<'a> {
    pub out: Vec<Lex<'a>>,
    layout: Layout,
}

impl<'a> Writer<'a> {
    pub fn new(layout: Layout) -> Self {
        Self {
            out: Vec::new(),
            layout,
        }
    }

    fn t(&mut self, t: Term) {
        self.out.push(Lex::Term(t));
    }

    fn name(&mut self, n: &'a str) {
        self.out.push(Lex::Name(n));
    }

    // ---- statements ----

    pub fn module(&mut self, m: &'a Module) {
        self.stmts(&m.body);
    }

    fn stmts(&mut self, stmts: &'a [Stmt]) {
        for (i, stmt) in stmts.iter().enumerate() {
            if let StmtKind::Comment(c) = &stmt.kind {
                self.out.push(Lex::Comment(&c.text));
                self.out.push(Lex::CommentEnd);
                continue;
            }
            if stmt.is_compound() {
                self.compound(stmt);
                continue;
            }
            self.simple(stmt);
            let trailing_next = matches!(
                stmts.get(i + 1).map(|s| &s.kind),
                Some(StmtKind::Comment(Comment {
                    placement: CommentPlacement::Trailing,
                    ..
                }))
            );
            if !trailing_next {
                self.t(Term::LineSep);
            }
        }
    }

    /// `: NEWLINE INDENT body DEDENT`, with the header's colon term given.
    fn suite(&mut self, colon: Term, body: &'a [Stmt]) {
        self.t(colon);
        let mut rest = body;
        if self.layout == Layout::Python {
            if let Some(Stmt {
                kind:
                    StmtKind::Comment(Comment {
                        text,
                        placement: CommentPlacement::Trailing,
                    }),
                ..
            }) = body.first()
            {
                self.out.push(Lex::Comment(text));
                rest = &body[1..];
            }
        }
        self.t(Term::BlockStart);
        self.stmts(rest);
        self.t(Term::BlockEnd);
    }

    fn opt_else(&mut self, orelse: &'a Option<Vec<Stmt>>) {
        if let Some(body) = orelse {
            self.t(Term::Else);
            self.suite(Term::ElseColon, body);
        }
    }

    fn decorators(&mut self, decorators: &'a [Expr]) {
        for d in decorators {
            self.t(Term::Decorator);
            self.expr(d, P_TEST);
            self.t(Term::LineSep);
        }
    }

    fn compound(&mut self, stmt: &'a Stmt) {
        match &stmt.kind {
            StmtKind::FunctionDef(f) => {
                self.decorators(&f.decorators);
                self.t(Term::Def);
                self.name(&f.name);
                self.params(&f.params, true);
                if let Some(r) = &f.returns {
                    self.t(Term::Arrow);
                    self.expr(r, P_TEST);
                }
                self.suite(Term::DefColon, &f.body);
            }
            StmtKind::ClassDef(c) => {
                self.decorators(&c.decorators);
                self.t(Term::Class);
                self.name(&c.name);
                if !c.bases.is_empty() || !c.keywords.is_empty() {
                    self.t(Term::LParen);
                    self.call_args(&c.bases, &c.keywords);
                    self.t(Term::RParen);
                }
                self.suite(Term::ClassColon, &c.body);
            }
            StmtKind::If {
                test,
                body,
                elifs,
                orelse,
            } => {
                self.t(Term::If);
                self.expr(test, P_TEST);
                self.suite(Term::IfColon, body);
                for clause in elifs {
                    self.t(Term::Elif);
                    self.expr(&clause.test, P_TEST);
                    self.suite(Term::ElifColon, &clause.body);
                }
                self.opt_else(orelse);
            }
            StmtKind::While { test, body, orelse } => {
                self.t(Term::While);
                self.expr(test, P_TEST);
                self.suite(Term::WhileColon, body);
                self.opt_else(orelse);
            }
            StmtKind::For {
                target,
                iter,
                body,
                orelse,
            } => {
                self.t(Term::For);
                self.exprs_bare(target);
                self.t(Term::In);
                self.exprs_bare(iter);
                self.suite(Term::ForColon, body);
                self.opt_else(orelse);
            }
            StmtKind::With { items, body } => {
                self.t(Term::With);
                let lone_tuple = self.layout == Layout::Python
                    && items.len() == 1
                    && items[0].target.is_none()
                    && matches!(items[0].context.kind, ExprKind::Tuple(_));
                if lone_tuple {
                    // `with (a, b):` would read as two items.
                    self.t(Term::LParen);
                    self.expr(&items[0].context, P_TEST);
                    self.t(Term::RParen);
                } else {
                    for (i, item) in items.iter().enumerate() {
                        if i > 0 {
                            self.t(Term::WithComma);
                        }
                        self.expr(&item.context, P_TEST);
                        if let Some(target) = &item.target {
                            self.t(Term::As);
                            self.expr(target, P_TEST);
                        }
                    }
                }
                self.suite(Term::WithColon, body);
            }
            StmtKind::Try {
                body,
                handlers,
                orelse,
                finalbody,
            } => {
                self.t(Term::Try);
                self.suite(Term::TryColon, body);
                for h in handlers {
                    self.t(Term::Except);
                    if let Some(kind) = &h.kind {
                        self.expr(kind, P_TEST);
                        if let Some(name) = &h.name {
                            self.t(Term::As);
                            self.name(name);
                        }
                    }
                    self.suite(Term::ExceptColon, &h.body);
                }
                self.opt_else(orelse);
                if let Some(fin) = finalbody {
                    self.t(Term::Finally);
                    self.suite(Term::FinallyColon, fin);
                }
            }
            _ => unreachable!("not a compound statement"),
        }
    }

    fn simple(&mut self, stmt: &'a Stmt) {
        match &stmt.kind {
            StmtKind::Return(value) => {
                self.t(Term::Return);
                if let Some(v) = value {
                    self.exprs_bare(v);
                }
            }
            StmtKind::Pass => self.t(Term::Pass),
            StmtKind::Break => self.t(Term::Break),
            StmtKind::Continue => self.t(Term::Continue),
            StmtKind::Raise { exc, cause } => {
                self.t(Term::Raise);
                if let Some(exc) = exc {
                    self.expr(exc, P_TEST);
                    if let Some(cause) = cause {
                        self.t(Term::RaiseFrom);
                        self.expr(cause, P_TEST);
                    }
                }
            }
            StmtKind::Assert { test, msg } => {
                self.t(Term::Assert);
                self.expr(test, P_TEST);
                if let Some(msg) = msg {
                    self.t(Term::Comma);
                    self.expr(msg, P_TEST);
                }
            }
            StmtKind::Assign { targets, value } => {
                for target in targets {
                    self.exprs_bare(target);
                    self.t(Term::Assign);
                }
                self.exprs_bare(value);
            }
            StmtKind::AugAssign { target, op, value } => {
                self.expr(target, P_TEST);
                self.t(Term::Aug(*op));
                self.exprs_bare(value);
            }
            StmtKind::AnnAssign {
                target,
                annotation,
                value,
            } => {
                self.expr(target, P_PRIMARY);
                self.t(Term::AnnColon);
                self.expr(annotation, P_TEST);
                if let Some(v) = value {
                    self.t(Term::Assign);
                    self.exprs_bare(v);
                }
            }
            StmtKind::Expr(e) => self.exprs_bare(e),
            StmtKind::Global(names) | StmtKind::Nonlocal(names) => {
                self.t(if matches!(stmt.kind, StmtKind::Global(_)) {
                    Term::Global
                } else {
                    Term::Nonlocal
                });
                for (i, n) in names.iter().enumerate() {
                    if i > 0 {
                        self.t(Term::Comma);
                    }
                    self.name(n);
                }
            }
            StmtKind::Delete(targets) => {
                self.t(Term::Del);
                self.comma_list(targets);
            }
            StmtKind::Import(names) => {
                self.t(Term::Import);
                self.aliases(names);
            }
            StmtKind::ImportFrom { level, module, names } => {
                self.t(Term::From);
                for _ in 0..*level {
                    self.t(Term::ImportDot);
                }
                match module {
                    Some(m) => {
                        self.name(m);
                        self.t(Term::FromImport);
                    }
                    None => self.t(Term::RelativeImport),
                }
                self.aliases(names);
            }
            _ => unreachable!("not a simple statement"),
        }
    }

    fn aliases(&mut self, names: &'a [Alias]) {
        for (i, a) in names.iter().enumerate() {
            if i > 0 {
                self.t(Term::Comma);
            }
            if a.name == "*" {
                self.t(Term::Star);
            } else {
                self.name(&a.name);
            }
            if let Some(asname) = &a.asname {
                self.t(Term::As);
                self.name(asname);
            }
        }
    }

    // ---- parameters ----

    /// `def` parameters (with parentheses and annotations) or lambda ones.
    pub fn params(&mut self, p: &'a Params, def: bool) {
        let sep = if def { Term::DefComma } else { Term::Comma };
        if def {
            self.t(Term::DefLParen);
        }
        let mut first = true;
        let mut item = |w: &mut Self| {
            if !first {
                w.t(sep);
            }
            first = false;
        };
        for param in &p.posonly {
            item(self);
            self.param(param);
        }
        if !p.posonly.is_empty() {
            item(self);
            self.t(Term::PosOnly);
        }
        for param in &p.args {
            item(self);
            self.param(param);
        }
        if let Some(v) = &p.vararg {
            item(self);
            self.t(if def { Term::VarArg } else { Term::Star });
            self.param(v);
        } else if !p.kwonly.is_empty() {
            item(self);
            self.t(if def { Term::KwOnly } else { Term::Star });
        }
        for param in &p.kwonly {
            item(self);
            self.param(param);
        }
        if let Some(k) = &p.kwarg {
            item(self);
            self.t(Term::DoubleStar);
            self.param(k);
        }
        if def {
            self.t(Term::DefRParen);
        }
    }

    fn param(&mut self, p: &'a Param) {
        self.name(&p.name);
        if let Some(ann) = &p.annotation {
            self.t(Term::AnnColon);
            self.expr(ann, P_TEST);
        }
        if let Some(d) = &p.default {
            self.t(if p.annotation.is_some() {
                Term::Assign
            } else {
                Term::KwEq
            });
            self.expr(d, P_TEST);
        }
    }

    // ---- expressions ----

    fn comma_list(&mut self, items: &'a [Expr]) {
        for (i, e) in items.iter().enumerate() {
            if i > 0 {
                self.t(Term::Comma);
            }
            self.expr(e, P_TEST);
        }
    }

    /// Where Python accepts an unparenthesized tuple: statement values,
    /// assignment targets, `for` clauses and subscripts.
    pub fn exprs_bare(&mut self, e: &'a Expr) {
        match &e.kind {
            ExprKind::Tuple(items) if !items.is_empty() => {
                self.comma_list(items);
                if items.len() == 1 {
                    self.t(Term::Comma);
                }
            }
            _ => self.expr(e, P_TEST),
        }
    }

    pub fn expr(&mut self, e: &'a Expr, min: u8) {
        if prec(e) < min {
            self.t(Term::LParen);
            self.expr_inner(e);
            self.t(Term::RParen);
        } else {
            self.expr_inner(e);
        }
    }

    fn expr_inner(&mut self, e: &'a Expr) {
        match &e.kind {
            ExprKind::Name(n) => self.name(n),
            ExprKind::Int(raw) | ExprKind::Float(raw) => self.out.push(Lex::Num(raw)),
            ExprKind::Str(parts) => {
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        self.t(Term::Concat);
                    }
                    match part {
                        StrPart::Plain(raw) => self.out.push(Lex::Str(raw)),
                        StrPart::Formatted(f) => self.out.push(Lex::FStr(f)),
                    }
                }
            }
            ExprKind::Bool(true) => self.t(Term::True),
            ExprKind::Bool(false) => self.t(Term::False),
            ExprKind::NoneLit => self.t(Term::None),
            ExprKind::Tuple(items) => {
                // Reached only when parenthesized by `expr`.
                self.comma_list(items);
                if items.len() == 1 {
                    self.t(Term::Comma);
                }
            }
            ExprKind::List(items) => {
                self.t(Term::LBracket);
                self.comma_list(items);
                self.t(Term::RBracket);
            }
            ExprKind::Set(items) => {
                self.t(Term::LBrace);
                self.comma_list(items);
                self.t(Term::RBrace);
            }
            ExprKind::Dict(items) => {
                self.t(Term::LBrace);
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        self.t(Term::Comma);
                    }
                    match item {
                        DictItem::Pair(k, v) => {
                            self.expr(k, P_TEST);
                            self.t(Term::DictColon);
                            self.expr(v, P_TEST);
                        }
                        DictItem::Unpack(v) => {
                            self.t(Term::DoubleStar);
                            self.expr(v, P_BOR);
                        }
                    }
                }
                self.t(Term::RBrace);
            }
            ExprKind::ListComp { elt, generators } => {
                self.t(Term::LBracket);
                self.expr(elt, P_TEST);
                self.generators(generators);
                self.t(Term::RBracket);
            }
            ExprKind::SetComp { elt, generators } => {
                self.t(Term::LBrace);
                self.expr(elt, P_TEST);
                self.generators(generators);
                self.t(Term::RBrace);
            }
            ExprKind::GenExp { elt, generators } => {
                self.t(Term::LParen);
                self.expr(elt, P_TEST);
                self.generators(generators);
                self.t(Term::RParen);
            }
            ExprKind::DictComp {
                key,
                value,
                generators,
            } => {
                self.t(Term::LBrace);
                self.expr(key, P_TEST);
                self.t(Term::DictColon);
                self.expr(value, P_TEST);
                self.generators(generators);
                self.t(Term::RBrace);
            }
            ExprKind::BinOp { left, op, right } => {
                let p = binop_prec(*op);
                if *op == BinOpKind::Pow {
                    self.expr(left, P_AWAIT);
                    self.t(Term::Bin(*op));
                    self.expr(right, P_UNARY);
                } else {
                    self.expr(left, p);
                    self.t(Term::Bin(*op));
                    self.expr(right, p + 1);
                }
            }
            ExprKind::UnaryOp { op, operand } => match op {
                UnaryOpKind::Not => {
                    self.t(Term::Not);
                    self.expr(operand, P_NOT);
                }
                UnaryOpKind::USub => {
                    self.t(Term::UMinus);
                    self.expr(operand, P_UNARY);
                }
                UnaryOpKind::UAdd => {
                    self.t(Term::UPlus);
                    self.expr(operand, P_UNARY);
                }
                UnaryOpKind::Invert => {
                    self.t(Term::Invert);
                    self.expr(operand, P_UNARY);
                }
            },
            ExprKind::BoolOp { op, values } => {
                let (p, term) = match op {
                    BoolOpKind::Or => (P_OR, Term::Or),
                    BoolOpKind::And => (P_AND, Term::And),
                };
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        self.t(term);
                    }
                    self.expr(v, p + 1);
                }
            }
            ExprKind::Compare { left, ops } => {
                self.expr(left, P_BOR);
                for (op, right) in ops {
                    self.t(cmp_term(*op));
                    self.expr(right, P_BOR);
                }
            }
            ExprKind::Call { func, args, keywords } => {
                self.expr(func, P_PRIMARY);
                self.t(Term::LParen);
                match (args.as_slice(), keywords.is_empty()) {
                    (
                        [Expr {
                            kind: ExprKind::GenExp { elt, generators },
                            ..
                        }],
                        true,
                    ) => {
                        self.expr(elt, P_TEST);
                        self.generators(generators);
                    }
                    _ => self.call_args(args, keywords),
                }
                self.t(Term::RParen);
            }
            ExprKind::Attribute { value, attr } => {
                if matches!(value.kind, ExprKind::Int(_)) {
                    self.t(Term::LParen);
                    self.expr_inner(value);
                    self.t(Term::RParen);
                } else {
                    self.expr(value, P_PRIMARY);
                }
                self.t(Term::Dot);
                self.name(attr);
            }
            ExprKind::Subscript { value, index } => {
                self.expr(value, P_PRIMARY);
                self.t(Term::LBracket);
                match &index.kind {
                    ExprKind::Tuple(items)
                        if !items.is_empty()
                            && !items.iter().any(|e| matches!(e.kind, ExprKind::Starred(_))) =>
                    {
                        self.exprs_bare(index)
                    }
                    _ => self.expr(index, P_TEST),
                }
                self.t(Term::RBracket);
            }
            ExprKind::Slice { lower, upper, step } => {
                if let Some(l) = lower {
                    self.expr(l, P_TEST);
                }
                self.t(Term::SliceColon);
                if let Some(u) = upper {
                    self.expr(u, P_TEST);
                }
                if let Some(s) = step {
                    self.t(Term::SliceColon);
                    self.expr(s, P_TEST);
                }
            }
            ExprKind::Lambda { params, body } => {
                self.t(Term::Lambda);
                self.params(params, false);
                self.t(Term::LambdaColon);
                self.expr(body, P_TEST);
            }
            ExprKind::IfExp { test, body, orelse } => {
                self.expr(body, P_OR);
                self.t(Term::ExprIf);
                self.expr(test, P_OR);
                self.t(Term::ExprElse);
                self.expr(orelse, P_TEST);
            }
            ExprKind::Starred(value) => {
                self.t(Term::Star);
                self.expr(value, P_BOR);
            }
        }
    }

    fn call_args(&mut self, args: &'a [Expr], keywords: &'a [Keyword]) {
        self.comma_list(args);
        for (i, k) in keywords.iter().enumerate() {
            if i > 0 || !args.is_empty() {
                self.t(Term::Comma);
            }
            match &k.arg {
                Some(name) => {
                    self.name(name);
                    self.t(Term::KwEq);
                    self.expr(&k.value, P_TEST);
                }
                None => {
                    self.t(Term::DoubleStar);
                    self.expr(&k.value, P_BOR);
                }
            }
        }
    }

    fn generators(&mut self, generators: &'a [Comprehension]) {
        for g in generators {
            self.t(Term::CompFor);
            self.exprs_bare(&g.target);
            self.t(Term::In);
            self.expr(&g.iter, P_OR);
            for cond in &g.ifs {
                self.t(Term::ExprIf);
                self.expr(cond, P_OR);
            }
        }
    }
}

/// Lexemes of a single expression, as written inside an f-string
/// interpolation.
pub fn interpolation_lexemes(e: &Expr, layout: Layout) -> Vec<Lex<'_>> {
    let mut w = Writer::new(layout);
    // A lambda's `:` would start the format spec.
    let min = if ends_in_lambda(e) { P_ATOM } else { P_IFEXP };
    w.expr(e, min);
    w.out
}

fn ends_in_lambda(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Lambda { .. } => true,
        ExprKind::IfExp { orelse, .. } => ends_in_lambda(orelse),
        _ => false,
    }
}

/// Lexemes of a whole module.
pub fn module_lexemes(m: &Module, layout: Layout) -> Vec<Lex<'_>> {
    let mut w = Writer::new(layout);
    w.module(m);
    w.out
}
