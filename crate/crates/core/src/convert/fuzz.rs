//! Differential fuzzing of the two frontends over random trees.
//!
//! Every generated tree must survive Python and SimPy emit/parse unchanged,
//! and converting its Python text must give exactly its SimPy text.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ast::visit::{expr_children_mut, stmt_bodies_mut, walk_bodies_mut, walk_exprs_mut};
use crate::ast::*;
use crate::grammar::{GrammarTokenTable, Spelling};
use crate::python::{parse_python_with_stats, python_token_count};
use crate::simpy::{emit_simpy_with, lex_simpy_with, parse_simpy_with_stats, SimpyTokenKind};
use crate::syntax::parser::ParseStats;
use crate::syntax::term::Term;
use crate::{emit_python, emit_simpy};

use super::py_to_simpy;

const NAMES: &[&str] = &[
    "a", "b", "x", "y", "self", "data", "_tmp", "value2", "match", "case", "type", "print",
];
const ATTRS: &[&str] = &["real", "append", "items", "x", "match", "_private"];
const INTS: &[&str] = &["0", "1", "42", "0x1F", "1_000", "0o17", "0b101", "10"];
const FLOATS: &[&str] = &["1.5", "2e3", "3j", ".5", "1.", "6.02e-23", "2.5J"];
const PLAIN_STRS: &[&str] = &[
    "'a'",
    "\"b c\"",
    "''",
    "'''t\nu'''",
    "r'\\d+'",
    "'tab\\t'",
    "\"it's\"",
    "u'x'",
    "'<line_sep>'",
    "'#'",
];
const BYTES: &[&str] = &["b'x'", "rb'\\x'", "B\"yz\""];
const FLITERALS: &[&str] = &["a", " ", "x = ", "{{", "}}", "-", "<if>"];
const FSPECS: &[&str] = &[">10", "0.2f", "x", "^", ","];
const COMMENTS: &[&str] = &[
    " note",
    "",
    "x",
    " TODO: a # b",
    " a <line_sep> b",
    " back\\slash \\",
    "   indented",
    "<block_end>",
];
const MODULES: &[&str] = &["os", "os.path", "a.b.c", "json", "match"];

/// Seeded random generator of trees both emitters accept.
pub struct AstGenerator {
    rng: ChaCha8Rng,
    /// Maximum expression nesting.
    pub expr_depth: u32,
    /// Maximum block nesting.
    pub block_depth: u32,
    /// Allow comment statements.
    pub comments: bool,
}

impl AstGenerator {
    pub fn new(seed: u64) -> Self {
        AstGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            expr_depth: 3,
            block_depth: 3,
            comments: true,
        }
    }

    fn pick<'a>(&mut self, pool: &[&'a str]) -> &'a str {
        pool.choose(&mut self.rng).copied().unwrap_or("a")
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn upto(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..=n)
    }

    pub fn module(&mut self) -> Module {
        let n = self.rng.gen_range(1..=5);
        Module {
            body: (0..n).map(|_| self.stmt(0)).collect(),
        }
    }

    fn block(&mut self, depth: u32) -> Vec<Stmt> {
        let n = self.rng.gen_range(1..=3);
        let mut body: Vec<Stmt> = (0..n).map(|_| self.stmt(depth + 1)).collect();
        if body.iter().all(Stmt::is_comment) {
            body.push(Stmt::new(StmtKind::Pass));
        }
        body
    }

    fn opt_block(&mut self, depth: u32, p: f64) -> Option<Vec<Stmt>> {
        self.chance(p).then(|| self.block(depth))
    }

    fn name(&mut self) -> String {
        self.pick(NAMES).to_string()
    }

    fn names(&mut self, max: usize) -> Vec<String> {
        let mut pool = NAMES.to_vec();
        pool.shuffle(&mut self.rng);
        let n = self.rng.gen_range(1..=max);
        pool.into_iter().take(n).map(str::to_string).collect()
    }

    pub fn stmt(&mut self, depth: u32) -> Stmt {
        let compound = depth < self.block_depth && self.chance(0.3);
        let kind = if compound {
            self.compound(depth)
        } else {
            self.simple()
        };
        Stmt::new(kind)
    }

    fn compound(&mut self, depth: u32) -> StmtKind {
        match self.rng.gen_range(0..8) {
            0 => StmtKind::FunctionDef(FunctionDef {
                name: self.name(),
                params: self.params(false),
                returns: self.chance(0.3).then(|| self.expr(1)),
                decorators: (0..self.upto(2)).map(|_| self.decorator()).collect(),
                body: self.block(depth),
            }),
            1 => {
                let mut keywords = self.keywords(1);
                keywords.retain(|k| k.arg.is_some() || self.chance(0.5));
                StmtKind::ClassDef(ClassDef {
                    name: self.name(),
                    bases: (0..self.upto(2)).map(|_| self.expr(1)).collect(),
                    keywords,
                    decorators: (0..self.upto(1)).map(|_| self.decorator()).collect(),
                    body: self.block(depth),
                })
            }
            2 => StmtKind::If {
                test: self.expr(self.expr_depth),
                body: self.block(depth),
                elifs: (0..self.upto(2))
                    .map(|_| ElifClause {
                        test: self.expr(2),
                        body: self.block(depth),
                    })
                    .collect(),
                orelse: self.opt_block(depth, 0.4),
            },
            3 => StmtKind::While {
                test: self.expr(self.expr_depth),
                body: self.block(depth),
                orelse: self.opt_block(depth, 0.2),
            },
            4 => StmtKind::For {
                target: self.target(true),
                iter: self.expr_list(),
                body: self.block(depth),
                orelse: self.opt_block(depth, 0.2),
            },
            5 => StmtKind::With {
                items: (0..self.rng.gen_range(1..=3))
                    .map(|_| WithItem {
                        context: self.expr(2),
                        target: self.chance(0.5).then(|| self.target(true)),
                    })
                    .collect(),
                body: self.block(depth),
            },
            _ => {
                let nh = self.upto(2);
                let mut handlers: Vec<ExceptHandler> = (0..nh)
                    .map(|_| {
                        let kind = Some(self.expr(1));
                        ExceptHandler {
                            name: self.chance(0.4).then(|| self.name()),
                            kind,
                            body: self.block(depth),
                        }
                    })
                    .collect();
                if self.chance(0.3) {
                    handlers.push(ExceptHandler {
                        kind: None,
                        name: None,
                        body: self.block(depth),
                    });
                }
                let orelse = if handlers.is_empty() {
                    None
                } else {
                    self.opt_block(depth, 0.3)
                };
                let finalbody = if handlers.is_empty() || self.chance(0.3) {
                    Some(self.block(depth))
                } else {
                    None
                };
                StmtKind::Try {
                    body: self.block(depth),
                    handlers,
                    orelse,
                    finalbody,
                }
            }
        }
    }

    fn simple(&mut self) -> StmtKind {
        let top = if self.comments { 17 } else { 16 };
        match self.rng.gen_range(0..top) {
            0 | 1 => StmtKind::Expr(self.expr(self.expr_depth)),
            2 | 3 => {
                let n = if self.chance(0.85) { 1 } else { 2 };
                StmtKind::Assign {
                    targets: (0..n).map(|_| self.target(true)).collect(),
                    value: self.expr_list(),
                }
            }
            4 => StmtKind::AugAssign {
                target: self.target(false),
                op: *BinOpKind::ALL.choose(&mut self.rng).unwrap_or(&BinOpKind::Add),
                value: self.expr(2),
            },
            5 => StmtKind::AnnAssign {
                target: self.target(false),
                annotation: self.expr(1),
                value: self.chance(0.6).then(|| self.expr(2)),
            },
            6 => StmtKind::Return(self.chance(0.7).then(|| self.expr_list())),
            7 => [StmtKind::Pass, StmtKind::Break, StmtKind::Continue]
                .choose(&mut self.rng)
                .cloned()
                .unwrap_or(StmtKind::Pass),
            8 => {
                let exc = self.chance(0.8).then(|| self.expr(2));
                let cause = if exc.is_some() && self.chance(0.3) {
                    Some(self.expr(1))
                } else {
                    None
                };
                StmtKind::Raise { exc, cause }
            }
            9 => StmtKind::Assert {
                test: self.expr(2),
                msg: self.chance(0.4).then(|| self.expr(1)),
            },
            10 => StmtKind::Import(
                (0..self.rng.gen_range(1..=2))
                    .map(|_| Alias {
                        name: self.pick(MODULES).to_string(),
                        asname: self.chance(0.3).then(|| self.name()),
                    })
                    .collect(),
            ),
            11 => {
                let level = if self.chance(0.6) {
                    0
                } else {
                    self.rng.gen_range(1..=4)
                };
                let module = (level == 0 || self.chance(0.5)).then(|| self.pick(MODULES).to_string());
                let names = if self.chance(0.15) {
                    vec![Alias {
                        name: "*".into(),
                        asname: None,
                    }]
                } else {
                    self.names(3)
                        .into_iter()
                        .map(|name| Alias {
                            name,
                            asname: self.chance(0.3).then(|| self.name()),
                        })
                        .collect()
                };
                StmtKind::ImportFrom { level, module, names }
            }
            12 => StmtKind::Global(self.names(3)),
            13 => StmtKind::Nonlocal(self.names(2)),
            14 => StmtKind::Delete(
                (0..self.rng.gen_range(1..=2))
                    .map(|_| self.target(false))
                    .collect(),
            ),
            15 => StmtKind::Expr(self.call(2)),
            _ => StmtKind::Comment(Comment {
                text: self.pick(COMMENTS).to_string(),
                placement: if self.chance(0.5) {
                    CommentPlacement::OwnLine
                } else {
                    CommentPlacement::Trailing
                },
            }),
        }
    }

    fn decorator(&mut self) -> Expr {
        match self.upto(2) {
            0 => Expr::name(self.name()),
            1 => {
                let base = Expr::name(self.name());
                self.attribute(base)
            }
            _ => self.call(1),
        }
    }

    fn attribute(&mut self, value: Expr) -> Expr {
        Expr::new(ExprKind::Attribute {
            value: Box::new(value),
            attr: self.pick(ATTRS).to_string(),
        })
    }

    /// Something assignable; `unpack` allows tuple and list targets.
    fn target(&mut self, unpack: bool) -> Expr {
        match self.upto(if unpack { 4 } else { 2 }) {
            0 => {
                let v = self.primary(1);
                self.attribute(v)
            }
            1 => {
                let value = self.primary(1);
                let index = self.index();
                Expr::new(ExprKind::Subscript {
                    value: Box::new(value),
                    index: Box::new(index),
                })
            }
            3 | 4 => {
                let n = self.rng.gen_range(1..=3);
                let star = self.chance(0.3).then(|| self.upto(n - 1));
                let items = (0..n)
                    .map(|i| {
                        let t = self.target(false);
                        if Some(i) == star {
                            Expr::new(ExprKind::Starred(Box::new(Expr::name(self.name()))))
                        } else {
                            t
                        }
                    })
                    .collect();
                Expr::new(if self.chance(0.7) {
                    ExprKind::Tuple(items)
                } else {
                    ExprKind::List(items)
                })
            }
            _ => Expr::name(self.name()),
        }
    }

    /// A statement value: a single expression or an unparenthesized tuple.
    fn expr_list(&mut self) -> Expr {
        if self.chance(0.2) {
            let n = self.rng.gen_range(1..=3);
            Expr::new(ExprKind::Tuple(self.display_items(n, 1)))
        } else {
            self.expr(self.expr_depth)
        }
    }

    fn display_items(&mut self, n: usize, depth: u32) -> Vec<Expr> {
        (0..n)
            .map(|_| {
                if self.chance(0.15) {
                    Expr::new(ExprKind::Starred(Box::new(self.expr(depth.saturating_sub(1)))))
                } else {
                    self.expr(depth)
                }
            })
            .collect()
    }

    fn index(&mut self) -> Expr {
        if self.chance(0.3) {
            let bound = |g: &mut Self| g.chance(0.5).then(|| Box::new(g.expr(1)));
            Expr::new(ExprKind::Slice {
                lower: bound(self),
                upper: bound(self),
                step: bound(self),
            })
        } else {
            self.expr(1)
        }
    }

    fn leaf(&mut self) -> Expr {
        match self.upto(9) {
            0..=3 => Expr::name(self.name()),
            4 => Expr::int(self.pick(INTS)),
            5 => Expr::new(ExprKind::Float(self.pick(FLOATS).to_string())),
            6 => Expr::new(ExprKind::Str(self.strings())),
            7 => Expr::new(ExprKind::Bool(self.chance(0.5))),
            8 => Expr::new(ExprKind::NoneLit),
            _ => Expr::new(ExprKind::Str(vec![StrPart::Plain(self.pick(BYTES).to_string())])),
        }
    }

    fn strings(&mut self) -> Vec<StrPart> {
        let n = if self.chance(0.8) { 1 } else { 2 };
        (0..n)
            .map(|_| {
                if self.chance(0.3) {
                    StrPart::Formatted(self.fstring())
                } else {
                    StrPart::Plain(self.pick(PLAIN_STRS).to_string())
                }
            })
            .collect()
    }

    fn fstring(&mut self) -> FString {
        let prefix = self.pick(&["f", "F", "rf", "fR"]).to_string();
        let quote = self.pick(&["'", "\""]).to_string();
        let n = self.rng.gen_range(0..=3);
        let mut pieces = Vec::new();
        for _ in 0..n {
            if self.chance(0.4) {
                pieces.push(FPiece::Literal(self.pick(FLITERALS).to_string()));
            } else {
                let format_spec = self.chance(0.3).then(|| {
                    let mut spec = vec![FPiece::Literal(self.pick(FSPECS).to_string())];
                    if self.chance(0.3) {
                        spec.push(FPiece::Interpolation {
                            expr: Box::new(Expr::name(self.name())),
                            conversion: None,
                            format_spec: None,
                        });
                    }
                    spec
                });
                pieces.push(FPiece::Interpolation {
                    expr: Box::new(self.stringless(2)),
                    conversion: self
                        .chance(0.2)
                        .then(|| self.pick(&["r", "s", "a"]).chars().next().unwrap_or('r')),
                    format_spec,
                });
            }
        }
        merge_literals(&mut pieces);
        FString {
            prefix,
            quote,
            pieces,
        }
    }

    /// An expression with no string literals anywhere inside, so it can sit in
    /// an f-string interpolation regardless of quoting.
    fn stringless(&mut self, depth: u32) -> Expr {
        for _ in 0..32 {
            let e = self.expr(depth);
            if !contains_string(&e) {
                return e;
            }
        }
        Expr::name(self.name())
    }

    fn primary(&mut self, depth: u32) -> Expr {
        if depth == 0 {
            return Expr::name(self.name());
        }
        match self.upto(3) {
            0 => {
                let v = self.primary(depth - 1);
                self.attribute(v)
            }
            1 => self.call(depth),
            2 => {
                let value = self.primary(depth - 1);
                let index = self.index();
                Expr::new(ExprKind::Subscript {
                    value: Box::new(value),
                    index: Box::new(index),
                })
            }
            _ => self.leaf(),
        }
    }

    fn keywords(&mut self, depth: u32) -> Vec<Keyword> {
        let names = self.names(3);
        let n = self.upto(names.len());
        let mut out: Vec<Keyword> = names
            .into_iter()
            .take(n)
            .map(|arg| Keyword {
                arg: Some(arg),
                value: self.expr(depth),
            })
            .collect();
        if self.chance(0.1) {
            out.push(Keyword {
                arg: None,
                value: self.expr(depth),
            });
        }
        out
    }

    fn call(&mut self, depth: u32) -> Expr {
        let d = depth.saturating_sub(1);
        let func = self.primary(d);
        let (args, keywords) = if self.chance(0.1) {
            (vec![self.comprehension_expr(d, Shape::Gen)], Vec::new())
        } else {
            let n = self.upto(3);
            (self.display_items(n, d), self.keywords(d))
        };
        Expr::new(ExprKind::Call {
            func: Box::new(func),
            args,
            keywords,
        })
    }

    fn params(&mut self, lambda: bool) -> Params {
        let mut names = self.names(6).into_iter();
        let mut p = Params::default();
        let param = |g: &mut Self, name: String, default: bool| Param {
            annotation: (!lambda && g.chance(0.3)).then(|| g.expr(1)),
            default: default.then(|| g.expr(1)),
            name,
        };
        let mut defaults = false;
        for slot in 0..2 {
            let n = self.upto(2);
            for _ in 0..n {
                let Some(name) = names.next() else { break };
                defaults |= self.chance(0.3);
                let made = param(self, name, defaults);
                if slot == 0 {
                    p.posonly.push(made);
                } else {
                    p.args.push(made);
                }
            }
        }
        if self.chance(0.3) {
            if let Some(name) = names.next() {
                p.vararg = Some(param(self, name, false));
            }
        }
        if self.chance(0.3) {
            for name in names.by_ref().take(2) {
                let d = self.chance(0.5);
                p.kwonly.push(param(self, name, d));
            }
        }
        if self.chance(0.2) {
            if let Some(name) = names.next() {
                p.kwarg = Some(param(self, name, false));
            }
        }
        p
    }

    fn comprehension_expr(&mut self, depth: u32, shape: Shape) -> Expr {
        let generators = (0..self.rng.gen_range(1..=2))
            .map(|_| Comprehension {
                target: if self.chance(0.7) {
                    Expr::name(self.name())
                } else {
                    Expr::new(ExprKind::Tuple(vec![
                        Expr::name(self.name()),
                        Expr::name(self.name()),
                    ]))
                },
                iter: self.expr(depth),
                ifs: (0..self.upto(2)).map(|_| self.expr(depth)).collect(),
            })
            .collect();
        let elt = Box::new(self.expr(depth));
        Expr::new(match shape {
            Shape::List => ExprKind::ListComp { elt, generators },
            Shape::Set => ExprKind::SetComp { elt, generators },
            Shape::Gen => ExprKind::GenExp { elt, generators },
            Shape::Dict => ExprKind::DictComp {
                key: elt,
                value: Box::new(self.expr(depth)),
                generators,
            },
        })
    }

    pub fn expr(&mut self, depth: u32) -> Expr {
        if depth == 0 {
            return self.leaf();
        }
        let d = depth - 1;
        let b = |e: Expr| Box::new(e);
        match self.upto(19) {
            0..=3 => self.leaf(),
            4 | 5 => Expr::new(ExprKind::BinOp {
                left: b(self.expr(d)),
                op: *BinOpKind::ALL.choose(&mut self.rng).unwrap_or(&BinOpKind::Add),
                right: b(self.expr(d)),
            }),
            6 => Expr::new(ExprKind::UnaryOp {
                op: *[
                    UnaryOpKind::Invert,
                    UnaryOpKind::Not,
                    UnaryOpKind::UAdd,
                    UnaryOpKind::USub,
                ]
                .choose(&mut self.rng)
                .unwrap_or(&UnaryOpKind::Not),
                operand: b(self.expr(d)),
            }),
            7 => Expr::new(ExprKind::BoolOp {
                op: if self.chance(0.5) {
                    BoolOpKind::And
                } else {
                    BoolOpKind::Or
                },
                values: (0..self.rng.gen_range(2..=3)).map(|_| self.expr(d)).collect(),
            }),
            8 => Expr::new(ExprKind::Compare {
                left: b(self.expr(d)),
                ops: (0..self.rng.gen_range(1..=2))
                    .map(|_| {
                        (
                            *CmpOp::ALL.choose(&mut self.rng).unwrap_or(&CmpOp::Eq),
                            self.expr(d),
                        )
                    })
                    .collect(),
            }),
            9 | 10 => self.primary(depth),
            11 => {
                let n = self.upto(3);
                let items = self.display_items(n, d);
                Expr::new(match self.upto(2) {
                    0 => ExprKind::Tuple(items),
                    1 => ExprKind::List(items),
                    _ if items.is_empty() => ExprKind::List(items),
                    _ => ExprKind::Set(items),
                })
            }
            12 => Expr::new(ExprKind::Dict(
                (0..self.upto(3))
                    .map(|_| {
                        if self.chance(0.15) {
                            DictItem::Unpack(self.expr(d))
                        } else {
                            DictItem::Pair(self.expr(d), self.expr(d))
                        }
                    })
                    .collect(),
            )),
            13 => {
                let shape = *[Shape::List, Shape::Set, Shape::Gen, Shape::Dict]
                    .choose(&mut self.rng)
                    .unwrap_or(&Shape::List);
                self.comprehension_expr(d, shape)
            }
            14 => Expr::new(ExprKind::Lambda {
                params: b_params(self.params(true)),
                body: b(self.expr(d)),
            }),
            15 => Expr::new(ExprKind::IfExp {
                test: b(self.expr(d)),
                body: b(self.expr(d)),
                orelse: b(self.expr(d)),
            }),
            16 => self.call(depth),
            _ => self.leaf(),
        }
    }
}

fn b_params(p: Params) -> Box<Params> {
    Box::new(p)
}

#[derive(Debug, Clone, Copy)]
enum Shape {
    List,
    Set,
    Gen,
    Dict,
}

fn merge_literals(pieces: &mut Vec<FPiece>) {
    let mut out: Vec<FPiece> = Vec::with_capacity(pieces.len());
    for p in pieces.drain(..) {
        match (out.last_mut(), p) {
            (Some(FPiece::Literal(prev)), FPiece::Literal(next)) => prev.push_str(&next),
            (_, p) => out.push(p),
        }
    }
    *pieces = out;
}

fn contains_string(e: &Expr) -> bool {
    let mut e = e.clone();
    let mut found = false;
    let mut check = |x: &mut Expr| found |= matches!(x.kind, ExprKind::Str(_));
    check(&mut e);
    let mut stmt = [Stmt::new(StmtKind::Expr(e))];
    walk_exprs_mut(&mut stmt, &mut check);
    found
}

/// A failing case, shrunk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub case: usize,
    pub case_seed: u64,
    /// First check that failed on the shrunk tree.
    pub reason: String,
    pub original_size: usize,
    pub shrunk_size: usize,
    /// The shrunk tree, as Python when it can be written.
    pub python: Option<String>,
    pub simpy: Option<String>,
    pub dump: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub cases: usize,
    pub failures: usize,
    /// Worst SimPy parse diagnostics over all cases.
    pub simpy_stats: ParseStats,
    pub python_stats: ParseStats,
    /// Shrunk counterexamples, at most [`MAX_COUNTEREXAMPLES`].
    pub counterexamples: Vec<Counterexample>,
}

impl FuzzSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub const MAX_COUNTEREXAMPLES: usize = 10;
const SHRINK_BUDGET: usize = 3000;

/// Per-case seed, so any case can be regenerated on its own.
pub fn case_seed(seed: u64, case: usize) -> u64 {
    let mut z = seed ^ (case as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn fuzz_roundtrip(seed: u64, n: usize) -> FuzzSummary {
    fuzz_roundtrip_table(seed, n, &GrammarTokenTable::default_table())
}

/// Default generator, cases checked in parallel; the summary is the same
/// as a sequential run.
pub fn fuzz_roundtrip_table(seed: u64, n: usize, table: &GrammarTokenTable) -> FuzzSummary {
    let outcomes: Vec<Result<(ParseStats, ParseStats), (Module, String)>> = (0..n)
        .into_par_iter()
        .map(|case| {
            let module = AstGenerator::new(case_seed(seed, case)).module();
            let mut stats = (ParseStats::default(), ParseStats::default());
            match check(&module, table, &mut stats) {
                Ok(()) => Ok(stats),
                Err(reason) => Err((module, reason)),
            }
        })
        .collect();
    let mut summary = FuzzSummary {
        seed,
        cases: n,
        ..FuzzSummary::default()
    };
    for (case, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(stats) => {
                absorb(&mut summary.python_stats, stats.0);
                absorb(&mut summary.simpy_stats, stats.1);
            }
            Err((module, reason)) => {
                summary.failures += 1;
                if summary.counterexamples.len() < MAX_COUNTEREXAMPLES {
                    let cs = case_seed(seed, case);
                    summary
                        .counterexamples
                        .push(shrink(case, cs, module, &reason, table));
                }
            }
        }
    }
    summary
}

/// Runs `n` cases against `table`, drawing each tree from `generate`.
pub fn fuzz_roundtrip_with(
    seed: u64,
    n: usize,
    table: &GrammarTokenTable,
    generate: &mut dyn FnMut(&mut AstGenerator) -> Module,
) -> FuzzSummary {
    let mut summary = FuzzSummary {
        seed,
        cases: n,
        ..FuzzSummary::default()
    };
    for case in 0..n {
        let cs = case_seed(seed, case);
        let module = generate(&mut AstGenerator::new(cs));
        let mut stats = (ParseStats::default(), ParseStats::default());
        let Err(reason) = check(&module, table, &mut stats) else {
            absorb(&mut summary.python_stats, stats.0);
            absorb(&mut summary.simpy_stats, stats.1);
            continue;
        };
        summary.failures += 1;
        if summary.counterexamples.len() < MAX_COUNTEREXAMPLES {
            summary
                .counterexamples
                .push(shrink(case, cs, module, &reason, table));
        }
    }
    summary
}

fn absorb(into: &mut ParseStats, s: ParseStats) {
    into.max_lookahead = into.max_lookahead.max(s.max_lookahead);
    into.backtracks += s.backtracks;
    into.ambiguities += s.ambiguities;
}

/// All checks for one tree. The error names the first failed check.
pub fn check(
    module: &Module,
    table: &GrammarTokenTable,
    stats: &mut (ParseStats, ParseStats),
) -> Result<(), String> {
    let py = emit_python(module).map_err(|e| format!("emit-python: {e}"))?;
    let (back, pstats) =
        parse_python_with_stats(&py).map_err(|e| format!("parse-python: {}", e.render(&py)))?;
    stats.0 = pstats;
    if back != *module {
        return Err("python-adjunction: tree changed through Python text".into());
    }
    if pstats.ambiguities > 0 {
        return Err(format!("python-ambiguity: {pstats:?}"));
    }

    let dialect = table.dialect();
    let simpy = emit_simpy_with(module, dialect).map_err(|e| format!("emit-simpy: {e}"))?;
    let (back, sstats) =
        parse_simpy_with_stats(&simpy, table).map_err(|e| format!("parse-simpy: {}", e.render(&simpy)))?;
    stats.1 = sstats;
    if back != *module {
        return Err("simpy-adjunction: tree changed through SimPy text".into());
    }
    if sstats.ambiguities > 0 || sstats.backtracks > 0 || sstats.max_lookahead > 2 {
        return Err(format!("simpy-determinism: {sstats:?}"));
    }

    match py_to_simpy(&py, table) {
        Ok(converted) if converted == simpy => {}
        Ok(_) => return Err("cross-grammar: converted Python differs from emitted SimPy".into()),
        Err(e) => return Err(format!("cross-grammar: {e}")),
    }

    let toks = lex_simpy_with(&simpy, dialect).map_err(|e| format!("lex-simpy: {e}"))?;
    if let Spelling::Placeholder(sep) = dialect.spelling(Term::LineSep) {
        let doubled = toks.windows(2).any(|w| {
            w.iter()
                .all(|t| t.kind == SimpyTokenKind::Placeholder && t.text == *sep)
        });
        if doubled {
            return Err(format!("line-sep: consecutive {sep}"));
        }
    }

    if has_block(&module.body) && !has_comment_or_concat(module) {
        let pyn = python_token_count(&py).map_err(|e| format!("lex-python: {e}"))?;
        let sn = toks.iter().filter(|t| t.kind != SimpyTokenKind::Eof).count();
        if sn >= pyn {
            return Err(format!(
                "token-strictness: {sn} SimPy tokens vs {pyn} Python tokens"
            ));
        }
    }
    Ok(())
}

fn has_block(body: &[Stmt]) -> bool {
    body.iter().any(Stmt::is_compound)
}

fn has_comment_or_concat(module: &Module) -> bool {
    let mut m = module.clone();
    let mut found = false;
    walk_bodies_mut(&mut m.body, &mut |b| found |= b.iter().any(Stmt::is_comment));
    walk_exprs_mut(&mut m.body, &mut |e| {
        found |= matches!(&e.kind, ExprKind::Str(parts) if parts.len() > 1)
    });
    found
}

/// Node count, for reporting shrink progress.
pub fn tree_size(module: &Module) -> usize {
    let mut m = module.clone();
    let mut n = 0;
    walk_bodies_mut(&mut m.body, &mut |b| n += b.len());
    walk_exprs_mut(&mut m.body, &mut |_| n += 1);
    n
}

fn failure_kind(reason: &str) -> &str {
    reason.split(':').next().unwrap_or(reason)
}

fn assignable(e: &Expr, unpack: bool) -> bool {
    match &e.kind {
        ExprKind::Name(_) | ExprKind::Attribute { .. } | ExprKind::Subscript { .. } => true,
        ExprKind::Tuple(items) | ExprKind::List(items) if unpack => items.iter().all(|i| match &i.kind {
            ExprKind::Starred(inner) => assignable(inner, false),
            _ => assignable(i, true),
        }),
        _ => false,
    }
}

/// Targets stay targets while shrinking; otherwise the emitted text fails
/// for reasons unrelated to the original counterexample.
fn targets_ok(m: &Module) -> bool {
    let mut m = m.clone();
    let mut ok = true;
    walk_bodies_mut(&mut m.body, &mut |body| {
        for s in body.iter() {
            ok &= match &s.kind {
                StmtKind::Assign { targets, .. } => targets.iter().all(|t| assignable(t, true)),
                StmtKind::For { target, .. } => assignable(target, true),
                StmtKind::With { items, .. } => items
                    .iter()
                    .all(|i| i.target.as_ref().is_none_or(|t| assignable(t, true))),
                StmtKind::AugAssign { target, .. } | StmtKind::AnnAssign { target, .. } => {
                    assignable(target, false)
                }
                StmtKind::Delete(targets) => targets.iter().all(|t| assignable(t, true)),
                _ => true,
            };
        }
    });
    walk_exprs_mut(&mut m.body, &mut |e| {
        if let ExprKind::ListComp { generators, .. }
        | ExprKind::SetComp { generators, .. }
        | ExprKind::GenExp { generators, .. }
        | ExprKind::DictComp { generators, .. } = &e.kind
        {
            ok &= generators.iter().all(|g| assignable(&g.target, true));
        }
    });
    ok
}

fn still_fails(m: &Module, kind: &str, table: &GrammarTokenTable) -> Option<String> {
    if validate(m).is_err() || !targets_ok(m) {
        return None;
    }
    let mut stats = Default::default();
    match check(m, table, &mut stats) {
        Err(r) if failure_kind(&r) == kind => Some(r),
        _ => None,
    }
}

/// Candidate simplifications of `m`, smallest-first within each family.
fn candidates(m: &Module) -> Vec<Module> {
    let mut out = Vec::new();
    let mut bodies = 0;
    {
        let mut probe = m.clone();
        walk_bodies_mut(&mut probe.body, &mut |_| bodies += 1);
    }
    for which in 0..bodies {
        let len = {
            let mut probe = m.clone();
            let mut len = 0;
            nth_body(&mut probe, which, &mut |b| len = b.len());
            len
        };
        for i in 0..len {
            let mut c = m.clone();
            nth_body(&mut c, which, &mut |b| {
                b.remove(i);
            });
            out.push(c);

            let mut c = m.clone();
            nth_body(&mut c, which, &mut |b| {
                let inner: Vec<Stmt> = stmt_bodies_mut(&mut b[i])
                    .into_iter()
                    .next()
                    .map(|body| body.clone())
                    .unwrap_or_default();
                if !inner.is_empty() {
                    b.splice(i..=i, inner);
                }
            });
            out.push(c);

            let mut c = m.clone();
            nth_body(&mut c, which, &mut |b| b[i] = Stmt::new(StmtKind::Pass));
            out.push(c);
        }
    }
    let mut exprs = 0;
    {
        let mut probe = m.clone();
        walk_exprs_mut(&mut probe.body, &mut |_| exprs += 1);
    }
    for which in 0..exprs {
        for child in 0..4 {
            let mut c = m.clone();
            let mut changed = false;
            nth_expr(&mut c, which, &mut |e| {
                let replacement = expr_children_mut(e).get(child).map(|x| (**x).clone());
                if let Some(r) = replacement {
                    if !matches!(r.kind, ExprKind::Slice { .. } | ExprKind::Starred(_)) {
                        *e = r;
                        changed = true;
                    }
                }
            });
            if changed {
                out.push(c);
            }
        }
        let mut c = m.clone();
        let mut changed = false;
        nth_expr(&mut c, which, &mut |e| {
            if !matches!(
                e.kind,
                ExprKind::Name(_) | ExprKind::Slice { .. } | ExprKind::Starred(_)
            ) {
                *e = Expr::name("a");
                changed = true;
            }
        });
        if changed {
            out.push(c);
        }
    }
    out.retain(|c| c != m);
    out
}

fn nth_body(m: &mut Module, n: usize, f: &mut dyn FnMut(&mut Vec<Stmt>)) {
    let mut i = 0;
    walk_bodies_mut(&mut m.body, &mut |b| {
        if i == n {
            f(b);
        }
        i += 1;
    });
}

fn nth_expr(m: &mut Module, n: usize, f: &mut dyn FnMut(&mut Expr)) {
    let mut i = 0;
    walk_exprs_mut(&mut m.body, &mut |e| {
        if i == n {
            f(e);
        }
        i += 1;
    });
}

fn shrink(
    case: usize,
    case_seed: u64,
    module: Module,
    reason: &str,
    table: &GrammarTokenTable,
) -> Counterexample {
    let kind = failure_kind(reason).to_string();
    let original_size = tree_size(&module);
    let mut best = module;
    let mut best_reason = reason.to_string();
    let mut budget = SHRINK_BUDGET;
    'outer: while budget > 0 {
        for c in candidates(&best) {
            if budget == 0 {
                break 'outer;
            }
            budget -= 1;
            if let Some(r) = still_fails(&c, &kind, table) {
                best = c;
                best_reason = r;
                continue 'outer;
            }
        }
        break;
    }
    Counterexample {
        case,
        case_seed,
        reason: best_reason,
        original_size,
        shrunk_size: tree_size(&best),
        python: emit_python(&best).ok(),
        simpy: emit_simpy(&best, table).ok(),
        dump: ast_dump(&best),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_module_passes() {
        let t = GrammarTokenTable::default_table();
        let s = fuzz_roundtrip_with(0, 1, &t, &mut |_| Module::default());
        assert!(s.passed(), "{s:?}");
    }

    #[test]
    fn generator_is_deterministic() {
        let a = AstGenerator::new(7).module();
        let b = AstGenerator::new(7).module();
        assert_eq!(a, b);
        assert_ne!(case_seed(1, 0), case_seed(1, 1));
    }

    #[test]
    fn generated_trees_validate() {
        for seed in 0..300 {
            let m = AstGenerator::new(seed).module();
            validate(&m).unwrap_or_else(|e| panic!("seed {seed}: {e}\n{}", ast_dump(&m)));
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        let t = GrammarTokenTable::default_table().without("<block_end>").unwrap();
        let s = fuzz_roundtrip_with(42, 200, &t, &mut |g| g.module());
        assert!(s.failures > 0);
        let c = &s.counterexamples[0];
        assert!(c.shrunk_size <= c.original_size);
    }
}
