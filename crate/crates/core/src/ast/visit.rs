//! Mutable access to the children of nodes, for rewriting passes.

use super::*;

/// Expressions held directly by a statement (not by nested statements).
pub fn stmt_exprs_mut(s: &mut Stmt) -> Vec<&mut Expr> {
    let mut out: Vec<&mut Expr> = Vec::new();
    match &mut s.kind {
        StmtKind::FunctionDef(f) => {
            out.extend(f.decorators.iter_mut());
            params_exprs_mut(&mut f.params, &mut out);
            out.extend(f.returns.iter_mut());
        }
        StmtKind::ClassDef(c) => {
            out.extend(c.decorators.iter_mut());
            out.extend(c.bases.iter_mut());
            out.extend(c.keywords.iter_mut().map(|k| &mut k.value));
        }
        StmtKind::If { test, elifs, .. } => {
            out.push(test);
            out.extend(elifs.iter_mut().map(|e| &mut e.test));
        }
        StmtKind::While { test, .. } => out.push(test),
        StmtKind::For { target, iter, .. } => {
            out.push(target);
            out.push(iter);
        }
        StmtKind::With { items, .. } => {
            for item in items {
                out.push(&mut item.context);
                out.extend(item.target.iter_mut());
            }
        }
        StmtKind::Try { handlers, .. } => {
            out.extend(handlers.iter_mut().filter_map(|h| h.kind.as_mut()));
        }
        StmtKind::Return(v) => out.extend(v.iter_mut()),
        StmtKind::Raise { exc, cause } => {
            out.extend(exc.iter_mut());
            out.extend(cause.iter_mut());
        }
        StmtKind::Assert { test, msg } => {
            out.push(test);
            out.extend(msg.iter_mut());
        }
        StmtKind::Assign { targets, value } => {
            out.extend(targets.iter_mut());
            out.push(value);
        }
        StmtKind::AugAssign { target, value, .. } => {
            out.push(target);
            out.push(value);
        }
        StmtKind::AnnAssign {
            target,
            annotation,
            value,
        } => {
            out.push(target);
            out.push(annotation);
            out.extend(value.iter_mut());
        }
        StmtKind::Expr(e) => out.push(e),
        StmtKind::Delete(targets) => out.extend(targets.iter_mut()),
        StmtKind::Import(_)
        | StmtKind::ImportFrom { .. }
        | StmtKind::Pass
        | StmtKind::Break
        | StmtKind::Continue
        | StmtKind::Global(_)
        | StmtKind::Nonlocal(_)
        | StmtKind::Comment(_) => {}
    }
    out
}

/// Statement lists nested directly in a statement.
pub fn stmt_bodies_mut(s: &mut Stmt) -> Vec<&mut Vec<Stmt>> {
    let mut out = Vec::new();
    match &mut s.kind {
        StmtKind::FunctionDef(f) => out.push(&mut f.body),
        StmtKind::ClassDef(c) => out.push(&mut c.body),
        StmtKind::If {
            body, elifs, orelse, ..
        } => {
            out.push(body);
            out.extend(elifs.iter_mut().map(|e| &mut e.body));
            out.extend(orelse.iter_mut());
        }
        StmtKind::While { body, orelse, .. } | StmtKind::For { body, orelse, .. } => {
            out.push(body);
            out.extend(orelse.iter_mut());
        }
        StmtKind::With { body, .. } => out.push(body),
        StmtKind::Try {
            body,
            handlers,
            orelse,
            finalbody,
        } => {
            out.push(body);
            out.extend(handlers.iter_mut().map(|h| &mut h.body));
            out.extend(orelse.iter_mut());
            out.extend(finalbody.iter_mut());
        }
        _ => {}
    }
    out
}

fn params_exprs_mut<'a>(p: &'a mut Params, out: &mut Vec<&'a mut Expr>) {
    let all = p
        .posonly
        .iter_mut()
        .chain(p.args.iter_mut())
        .chain(p.vararg.iter_mut())
        .chain(p.kwonly.iter_mut())
        .chain(p.kwarg.iter_mut());
    for param in all {
        out.extend(param.annotation.iter_mut());
        out.extend(param.default.iter_mut());
    }
}

fn fpieces_mut<'a>(pieces: &'a mut [FPiece], out: &mut Vec<&'a mut Expr>) {
    for p in pieces {
        if let FPiece::Interpolation {
            expr, format_spec, ..
        } = p
        {
            out.push(expr);
            if let Some(spec) = format_spec {
                fpieces_mut(spec, out);
            }
        }
    }
}

fn generators_mut<'a>(gens: &'a mut [Comprehension], out: &mut Vec<&'a mut Expr>) {
    for g in gens {
        out.push(&mut g.target);
        out.push(&mut g.iter);
        out.extend(g.ifs.iter_mut());
    }
}

/// Direct subexpressions of an expression.
pub fn expr_children_mut(e: &mut Expr) -> Vec<&mut Expr> {
    let mut out: Vec<&mut Expr> = Vec::new();
    match &mut e.kind {
        ExprKind::Name(_) | ExprKind::Int(_) | ExprKind::Float(_) | ExprKind::Bool(_) | ExprKind::NoneLit => {
        }
        ExprKind::Str(parts) => {
            for part in parts {
                if let StrPart::Formatted(f) = part {
                    fpieces_mut(&mut f.pieces, &mut out);
                }
            }
        }
        ExprKind::Tuple(items) | ExprKind::List(items) | ExprKind::Set(items) => out.extend(items.iter_mut()),
        ExprKind::Dict(items) => {
            for item in items {
                match item {
                    DictItem::Pair(k, v) => {
                        out.push(k);
                        out.push(v);
                    }
                    DictItem::Unpack(v) => out.push(v),
                }
            }
        }
        ExprKind::ListComp { elt, generators }
        | ExprKind::SetComp { elt, generators }
        | ExprKind::GenExp { elt, generators } => {
            out.push(elt);
            generators_mut(generators, &mut out);
        }
        ExprKind::DictComp {
            key,
            value,
            generators,
        } => {
            out.push(key);
            out.push(value);
            generators_mut(generators, &mut out);
        }
        ExprKind::BinOp { left, right, .. } => {
            out.push(left);
            out.push(right);
        }
        ExprKind::UnaryOp { operand, .. } => out.push(operand),
        ExprKind::BoolOp { values, .. } => out.extend(values.iter_mut()),
        ExprKind::Compare { left, ops } => {
            out.push(left);
            out.extend(ops.iter_mut().map(|(_, e)| e));
        }
        ExprKind::Call { func, args, keywords } => {
            out.push(func);
            out.extend(args.iter_mut());
            out.extend(keywords.iter_mut().map(|k| &mut k.value));
        }
        ExprKind::Attribute { value, .. } => out.push(value),
        ExprKind::Subscript { value, index } => {
            out.push(value);
            out.push(index);
        }
        ExprKind::Slice { lower, upper, step } => {
            for b in [lower, upper, step].into_iter().flatten() {
                out.push(b);
            }
        }
        ExprKind::Lambda { params, body } => {
            params_exprs_mut(params, &mut out);
            out.push(body);
        }
        ExprKind::IfExp { test, body, orelse } => {
            out.push(body);
            out.push(test);
            out.push(orelse);
        }
        ExprKind::Starred(v) => out.push(v),
    }
    out
}

/// Calls `f` on every statement list in the module, outermost first.
pub fn walk_bodies_mut(body: &mut Vec<Stmt>, f: &mut dyn FnMut(&mut Vec<Stmt>)) {
    f(body);
    for s in body.iter_mut() {
        for b in stmt_bodies_mut(s) {
            walk_bodies_mut(b, f);
        }
    }
}

fn walk_expr_mut(e: &mut Expr, f: &mut dyn FnMut(&mut Expr)) {
    f(e);
    for c in expr_children_mut(e) {
        walk_expr_mut(c, f);
    }
}

/// Calls `f` on every expression in the module, parents before children.
pub fn walk_exprs_mut(body: &mut [Stmt], f: &mut dyn FnMut(&mut Expr)) {
    for s in body.iter_mut() {
        for e in stmt_exprs_mut(s) {
            walk_expr_mut(e, f);
        }
        for b in stmt_bodies_mut(s) {
            walk_exprs_mut(b, f);
        }
    }
}
