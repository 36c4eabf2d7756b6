//! Canonical text dump.
//!
//! One node per line, two spaces of indentation per depth. Every field of a
//! node is written, in declaration order, under its name:
//!
//! ```text
//! Module[1]
//!   Assign
//!     targets[1]
//!       Name "x"
//!     value: Int "1"
//! ```
//!
//! Lists print their length (`body[]` when empty), absent optionals print
//! `-`, and scalar payloads are Rust-debug quoted so they can never be
//! confused with structure. Spans and comment placement are not written.

use super::*;

pub fn ast_dump(module: &Module) -> String {
    let mut d = Dumper::default();
    d.out.push_str("Module");
    d.out.push_str(&count(module.body.len()));
    d.depth = 1;
    for stmt in &module.body {
        d.stmt(None, stmt);
    }
    d.out.push('\n');
    d.out
}

fn count(n: usize) -> String {
    if n == 0 {
        "[]".to_string()
    } else {
        format!("[{n}]")
    }
}

#[derive(Default)]
struct Dumper {
    out: String,
    depth: usize,
}

impl Dumper {
    fn line(&mut self, label: Option<&str>, text: &str) {
        self.out.push('\n');
        for _ in 0..self.depth {
            self.out.push_str("  ");
        }
        if let Some(label) = label {
            self.out.push_str(label);
            self.out.push_str(": ");
        }
        self.out.push_str(text);
    }

    fn nested(&mut self, f: impl FnOnce(&mut Self)) {
        self.depth += 1;
        f(self);
        self.depth -= 1;
    }

    fn list<T>(&mut self, label: &str, items: &[T], mut f: impl FnMut(&mut Self, &T)) {
        self.line(None, &format!("{label}{}", count(items.len())));
        self.nested(|d| {
            for item in items {
                f(d, item);
            }
        });
    }

    fn body(&mut self, label: &str, stmts: &[Stmt]) {
        self.list(label, stmts, |d, s| d.stmt(None, s));
    }

    fn opt_body(&mut self, label: &str, stmts: &Option<Vec<Stmt>>) {
        match stmts {
            Some(stmts) => self.body(label, stmts),
            None => self.line(Some(label), "-"),
        }
    }

    fn exprs(&mut self, label: &str, exprs: &[Expr]) {
        self.list(label, exprs, |d, e| d.expr(None, e));
    }

    fn opt_expr(&mut self, label: &str, expr: Option<&Expr>) {
        match expr {
            Some(e) => self.expr(Some(label), e),
            None => self.line(Some(label), "-"),
        }
    }

    fn opt_str(opt: &Option<String>) -> String {
        match opt {
            Some(s) => format!("{s:?}"),
            None => "-".to_string(),
        }
    }

    fn stmt(&mut self, label: Option<&str>, stmt: &Stmt) {
        match &stmt.kind {
            StmtKind::FunctionDef(f) => {
                self.line(label, &format!("FunctionDef {:?}", f.name));
                self.nested(|d| {
                    d.params("params", &f.params);
                    d.opt_expr("returns", f.returns.as_ref());
                    d.exprs("decorators", &f.decorators);
                    d.body("body", &f.body);
                });
            }
            StmtKind::ClassDef(c) => {
                self.line(label, &format!("ClassDef {:?}", c.name));
                self.nested(|d| {
                    d.exprs("bases", &c.bases);
                    d.keywords("keywords", &c.keywords);
                    d.exprs("decorators", &c.decorators);
                    d.body("body", &c.body);
                });
            }
            StmtKind::If {
                test,
                body,
                elifs,
                orelse,
            } => {
                self.line(label, "If");
                self.nested(|d| {
                    d.expr(Some("test"), test);
                    d.body("body", body);
                    d.list("elifs", elifs, |d, clause| {
                        d.line(None, "Elif");
                        d.nested(|d| {
                            d.expr(Some("test"), &clause.test);
                            d.body("body", &clause.body);
                        });
                    });
                    d.opt_body("orelse", orelse);
                });
            }
            StmtKind::While { test, body, orelse } => {
                self.line(label, "While");
                self.nested(|d| {
                    d.expr(Some("test"), test);
                    d.body("body", body);
                    d.opt_body("orelse", orelse);
                });
            }
            StmtKind::For {
                target,
                iter,
                body,
                orelse,
            } => {
                self.line(label, "For");
                self.nested(|d| {
                    d.expr(Some("target"), target);
                    d.expr(Some("iter"), iter);
                    d.body("body", body);
                    d.opt_body("orelse", orelse);
                });
            }
            StmtKind::With { items, body } => {
                self.line(label, "With");
                self.nested(|d| {
                    d.list("items", items, |d, item| {
                        d.line(None, "WithItem");
                        d.nested(|d| {
                            d.expr(Some("context"), &item.context);
                            d.opt_expr("target", item.target.as_ref());
                        });
                    });
                    d.body("body", body);
                });
            }
            StmtKind::Try {
                body,
                handlers,
                orelse,
                finalbody,
            } => {
                self.line(label, "Try");
                self.nested(|d| {
                    d.body("body", body);
                    d.list("handlers", handlers, |d, h| {
                        d.line(None, &format!("ExceptHandler {}", Self::opt_str(&h.name)));
                        d.nested(|d| {
                            d.opt_expr("kind", h.kind.as_ref());
                            d.body("body", &h.body);
                        });
                    });
                    d.opt_body("orelse", orelse);
                    d.opt_body("finalbody", finalbody);
                });
            }
            StmtKind::Import(names) => {
                self.line(label, "Import");
                self.nested(|d| d.aliases(names));
            }
            StmtKind::ImportFrom { level, module, names } => {
                self.line(label, &format!("ImportFrom {level} {}", Self::opt_str(module)));
                self.nested(|d| d.aliases(names));
            }
            StmtKind::Return(value) => {
                self.line(label, "Return");
                self.nested(|d| d.opt_expr("value", value.as_ref()));
            }
            StmtKind::Pass => self.line(label, "Pass"),
            StmtKind::Break => self.line(label, "Break"),
            StmtKind::Continue => self.line(label, "Continue"),
            StmtKind::Raise { exc, cause } => {
                self.line(label, "Raise");
                self.nested(|d| {
                    d.opt_expr("exc", exc.as_ref());
                    d.opt_expr("cause", cause.as_ref());
                });
            }
            StmtKind::Assert { test, msg } => {
                self.line(label, "Assert");
                self.nested(|d| {
                    d.expr(Some("test"), test);
                    d.opt_expr("msg", msg.as_ref());
                });
            }
            StmtKind::Assign { targets, value } => {
                self.line(label, "Assign");
                self.nested(|d| {
                    d.exprs("targets", targets);
                    d.expr(Some("value"), value);
                });
            }
            StmtKind::AugAssign { target, op, value } => {
                self.line(label, &format!("AugAssign {op:?}"));
                self.nested(|d| {
                    d.expr(Some("target"), target);
                    d.expr(Some("value"), value);
                });
            }
            StmtKind::AnnAssign {
                target,
                annotation,
                value,
            } => {
                self.line(label, "AnnAssign");
                self.nested(|d| {
                    d.expr(Some("target"), target);
                    d.expr(Some("annotation"), annotation);
                    d.opt_expr("value", value.as_ref());
                });
            }
            StmtKind::Expr(e) => {
                self.line(label, "Expr");
                self.nested(|d| d.expr(Some("value"), e));
            }
            StmtKind::Global(names) => self.line(label, &format!("Global {names:?}")),
            StmtKind::Nonlocal(names) => self.line(label, &format!("Nonlocal {names:?}")),
            StmtKind::Delete(targets) => {
                self.line(label, "Delete");
                self.nested(|d| d.exprs("targets", targets));
            }
            StmtKind::Comment(c) => self.line(label, &format!("Comment {:?}", c.text)),
        }
    }

    fn aliases(&mut self, names: &[Alias]) {
        self.list("names", names, |d, a| {
            d.line(None, &format!("Alias {:?} {}", a.name, Self::opt_str(&a.asname)));
        });
    }

    fn keywords(&mut self, label: &str, keywords: &[Keyword]) {
        self.list(label, keywords, |d, k| {
            d.line(None, &format!("Keyword {}", Self::opt_str(&k.arg)));
            d.nested(|d| d.expr(Some("value"), &k.value));
        });
    }

    fn params(&mut self, label: &str, p: &Params) {
        self.line(Some(label), "Params");
        self.nested(|d| {
            d.list("posonly", &p.posonly, |d, p| d.param(None, p));
            d.list("args", &p.args, |d, p| d.param(None, p));
            match &p.vararg {
                Some(v) => d.param(Some("vararg"), v),
                None => d.line(Some("vararg"), "-"),
            }
            d.list("kwonly", &p.kwonly, |d, p| d.param(None, p));
            match &p.kwarg {
                Some(v) => d.param(Some("kwarg"), v),
                None => d.line(Some("kwarg"), "-"),
            }
        });
    }

    fn param(&mut self, label: Option<&str>, p: &Param) {
        self.line(label, &format!("Param {:?}", p.name));
        self.nested(|d| {
            d.opt_expr("annotation", p.annotation.as_ref());
            d.opt_expr("default", p.default.as_ref());
        });
    }

    fn generators(&mut self, generators: &[Comprehension]) {
        self.list("generators", generators, |d, g| {
            d.line(None, "Comprehension");
            d.nested(|d| {
                d.expr(Some("target"), &g.target);
                d.expr(Some("iter"), &g.iter);
                d.exprs("ifs", &g.ifs);
            });
        });
    }

    fn fpieces(&mut self, label: &str, pieces: &[FPiece]) {
        self.list(label, pieces, |d, piece| match piece {
            FPiece::Literal(raw) => d.line(None, &format!("Literal {raw:?}")),
            FPiece::Interpolation {
                expr,
                conversion,
                format_spec,
            } => {
                let conv = match conversion {
                    Some(c) => format!("{c:?}"),
                    None => "-".to_string(),
                };
                d.line(None, &format!("Interpolation {conv}"));
                d.nested(|d| {
                    d.expr(Some("expr"), expr);
                    match format_spec {
                        Some(spec) => d.fpieces("spec", spec),
                        None => d.line(Some("spec"), "-"),
                    }
                });
            }
        });
    }

    fn expr(&mut self, label: Option<&str>, expr: &Expr) {
        match &expr.kind {
            ExprKind::Name(id) => self.line(label, &format!("Name {id:?}")),
            ExprKind::Int(raw) => self.line(label, &format!("Int {raw:?}")),
            ExprKind::Float(raw) => self.line(label, &format!("Float {raw:?}")),
            ExprKind::Str(parts) => {
                self.line(label, "Str");
                self.nested(|d| {
                    d.list("parts", parts, |d, part| match part {
                        StrPart::Plain(raw) => d.line(None, &format!("Plain {raw:?}")),
                        StrPart::Formatted(f) => {
                            d.line(None, &format!("FString {:?} {:?}", f.prefix, f.quote));
                            d.nested(|d| d.fpieces("pieces", &f.pieces));
                        }
                    });
                });
            }
            ExprKind::Bool(b) => self.line(label, &format!("Bool {b}")),
            ExprKind::NoneLit => self.line(label, "None"),
            ExprKind::Tuple(elts) => self.seq(label, "Tuple", elts),
            ExprKind::List(elts) => self.seq(label, "List", elts),
            ExprKind::Set(elts) => self.seq(label, "Set", elts),
            ExprKind::Dict(items) => {
                self.line(label, "Dict");
                self.nested(|d| {
                    d.list("items", items, |d, item| match item {
                        DictItem::Pair(k, v) => {
                            d.line(None, "Pair");
                            d.nested(|d| {
                                d.expr(Some("key"), k);
                                d.expr(Some("value"), v);
                            });
                        }
                        DictItem::Unpack(e) => {
                            d.line(None, "Unpack");
                            d.nested(|d| d.expr(Some("value"), e));
                        }
                    });
                });
            }
            ExprKind::ListComp { elt, generators } => self.comp(label, "ListComp", elt, generators),
            ExprKind::SetComp { elt, generators } => self.comp(label, "SetComp", elt, generators),
            ExprKind::GenExp { elt, generators } => self.comp(label, "GenExp", elt, generators),
            ExprKind::DictComp {
                key,
                value,
                generators,
            } => {
                self.line(label, "DictComp");
                self.nested(|d| {
                    d.expr(Some("key"), key);
                    d.expr(Some("value"), value);
                    d.generators(generators);
                });
            }
            ExprKind::BinOp { left, op, right } => {
                self.line(label, &format!("BinOp {op:?}"));
                self.nested(|d| {
                    d.expr(Some("left"), left);
                    d.expr(Some("right"), right);
                });
            }
            ExprKind::UnaryOp { op, operand } => {
                self.line(label, &format!("UnaryOp {op:?}"));
                self.nested(|d| d.expr(Some("operand"), operand));
            }
            ExprKind::BoolOp { op, values } => {
                self.line(label, &format!("BoolOp {op:?}"));
                self.nested(|d| d.exprs("values", values));
            }
            ExprKind::Compare { left, ops } => {
                self.line(label, "Compare");
                self.nested(|d| {
                    d.expr(Some("left"), left);
                    d.list("ops", ops, |d, (op, e)| d.expr(Some(&format!("{op:?}")), e));
                });
            }
            ExprKind::Call { func, args, keywords } => {
                self.line(label, "Call");
                self.nested(|d| {
                    d.expr(Some("func"), func);
                    d.exprs("args", args);
                    d.keywords("keywords", keywords);
                });
            }
            ExprKind::Attribute { value, attr } => {
                self.line(label, &format!("Attribute {attr:?}"));
                self.nested(|d| d.expr(Some("value"), value));
            }
            ExprKind::Subscript { value, index } => {
                self.line(label, "Subscript");
                self.nested(|d| {
                    d.expr(Some("value"), value);
                    d.expr(Some("index"), index);
                });
            }
            ExprKind::Slice { lower, upper, step } => {
                self.line(label, "Slice");
                self.nested(|d| {
                    d.opt_expr("lower", lower.as_deref());
                    d.opt_expr("upper", upper.as_deref());
                    d.opt_expr("step", step.as_deref());
                });
            }
            ExprKind::Lambda { params, body } => {
                self.line(label, "Lambda");
                self.nested(|d| {
                    d.params("params", params);
                    d.expr(Some("body"), body);
                });
            }
            ExprKind::IfExp { test, body, orelse } => {
                self.line(label, "IfExp");
                self.nested(|d| {
                    d.expr(Some("test"), test);
                    d.expr(Some("body"), body);
                    d.expr(Some("orelse"), orelse);
                });
            }
            ExprKind::Starred(value) => {
                self.line(label, "Starred");
                self.nested(|d| d.expr(Some("value"), value));
            }
        }
    }

    fn seq(&mut self, label: Option<&str>, kind: &str, elts: &[Expr]) {
        self.line(label, kind);
        self.nested(|d| d.exprs("elts", elts));
    }

    fn comp(&mut self, label: Option<&str>, kind: &str, elt: &Expr, generators: &[Comprehension]) {
        self.line(label, kind);
        self.nested(|d| {
            d.expr(Some("elt"), elt);
            d.generators(generators);
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_module_is_one_line() {
        assert_eq!(ast_dump(&Module::default()), "Module[]\n");
    }

    #[test]
    fn assign_layout() {
        let m = Module {
            body: vec![Stmt::new(StmtKind::Assign {
                targets: vec![Expr::name("x")],
                value: Expr::int("1"),
            })],
        };
        assert_eq!(
            ast_dump(&m),
            "Module[1]\n  Assign\n    targets[1]\n      Name \"x\"\n    value: Int \"1\"\n"
        );
    }

    #[test]
    fn scalars_are_quoted() {
        let a = Module {
            body: vec![Stmt::new(StmtKind::Expr(Expr::name("a\n  Name \"b\"")))],
        };
        let b = Module {
            body: vec![Stmt::new(StmtKind::Expr(Expr::name("a")))],
        };
        assert_ne!(ast_dump(&a), ast_dump(&b));
        assert_eq!(ast_dump(&a).lines().count(), ast_dump(&b).lines().count());
    }
}
