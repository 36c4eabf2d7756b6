//! Shape checks an emitter needs before it can write a tree as text.

use super::*;
use crate::error::EmitError;

pub fn validate(module: &Module) -> Result<(), EmitError> {
    for s in &module.body {
        stmt(s)?;
    }
    Ok(())
}

fn fail<T>(msg: impl Into<String>) -> Result<T, EmitError> {
    Err(EmitError(msg.into()))
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c == '_' || c.is_alphabetic())
        && chars.all(|c| c == '_' || c.is_alphanumeric())
        && !crate::python::lexer::is_keyword(s)
}

fn ident(s: &str) -> Result<(), EmitError> {
    if is_identifier(s) {
        Ok(())
    } else {
        fail(format!("{s:?} is not an identifier"))
    }
}

fn dotted(s: &str) -> Result<(), EmitError> {
    s.split('.').try_for_each(ident)
}

fn block(body: &[Stmt], what: &str) -> Result<(), EmitError> {
    if !body.iter().any(|s| !s.is_comment()) {
        return fail(format!("{what} block has no statements"));
    }
    body.iter().try_for_each(stmt)
}

fn opt_block(body: &Option<Vec<Stmt>>, what: &str) -> Result<(), EmitError> {
    body.as_deref().map_or(Ok(()), |b| block(b, what))
}

fn params(p: &Params, lambda: bool) -> Result<(), EmitError> {
    let mut seen_default = false;
    for param in p.posonly.iter().chain(&p.args) {
        if param.default.is_some() {
            seen_default = true;
        } else if seen_default {
            return fail("parameter without a default follows one with a default");
        }
    }
    let all = p
        .posonly
        .iter()
        .chain(&p.args)
        .chain(&p.vararg)
        .chain(&p.kwonly)
        .chain(&p.kwarg);
    for param in all {
        ident(&param.name)?;
        if let Some(a) = &param.annotation {
            if lambda {
                return fail("lambda parameters cannot be annotated");
            }
            expr(a)?;
        }
        if let Some(d) = &param.default {
            expr(d)?;
        }
    }
    for special in p.vararg.iter().chain(&p.kwarg) {
        if special.default.is_some() {
            return fail("star parameters cannot have defaults");
        }
    }
    Ok(())
}

fn stmt(s: &Stmt) -> Result<(), EmitError> {
    match &s.kind {
        StmtKind::FunctionDef(f) => {
            ident(&f.name)?;
            params(&f.params, false)?;
            f.returns.iter().try_for_each(expr)?;
            f.decorators.iter().try_for_each(expr)?;
            block(&f.body, "function")
        }
        StmtKind::ClassDef(c) => {
            ident(&c.name)?;
            c.bases.iter().try_for_each(expr)?;
            c.keywords.iter().try_for_each(keyword)?;
            c.decorators.iter().try_for_each(expr)?;
            block(&c.body, "class")
        }
        StmtKind::If {
            test,
            body,
            elifs,
            orelse,
        } => {
            expr(test)?;
            block(body, "if")?;
            for e in elifs {
                expr(&e.test)?;
                block(&e.body, "elif")?;
            }
            opt_block(orelse, "else")
        }
        StmtKind::While { test, body, orelse } => {
            expr(test)?;
            block(body, "while")?;
            opt_block(orelse, "else")
        }
        StmtKind::For {
            target,
            iter,
            body,
            orelse,
        } => {
            expr(target)?;
            expr(iter)?;
            block(body, "for")?;
            opt_block(orelse, "else")
        }
        StmtKind::With { items, body } => {
            if items.is_empty() {
                return fail("with statement without items");
            }
            for item in items {
                expr(&item.context)?;
                item.target.iter().try_for_each(expr)?;
            }
            block(body, "with")
        }
        StmtKind::Try {
            body,
            handlers,
            orelse,
            finalbody,
        } => {
            block(body, "try")?;
            if handlers.is_empty() && finalbody.is_none() {
                return fail("try statement needs a handler or finally");
            }
            if handlers.is_empty() && orelse.is_some() {
                return fail("try/else without handlers");
            }
            for (i, h) in handlers.iter().enumerate() {
                if h.kind.is_none() && i + 1 != handlers.len() {
                    return fail("bare except must be last");
                }
                if h.kind.is_none() && h.name.is_some() {
                    return fail("bare except cannot bind a name");
                }
                h.kind.iter().try_for_each(expr)?;
                h.name.iter().try_for_each(|n| ident(n))?;
                block(&h.body, "except")?;
            }
            opt_block(orelse, "else")?;
            opt_block(finalbody, "finally")
        }
        StmtKind::Import(names) => {
            if names.is_empty() {
                return fail("empty import");
            }
            for a in names {
                dotted(&a.name)?;
                a.asname.iter().try_for_each(|n| ident(n))?;
            }
            Ok(())
        }
        StmtKind::ImportFrom { level, module, names } => {
            if names.is_empty() {
                return fail("empty import");
            }
            match module {
                Some(m) => dotted(m)?,
                None if *level == 0 => return fail("from-import without module or level"),
                None => {}
            }
            if names.iter().any(|a| a.name == "*") {
                if names.len() != 1 || names[0].asname.is_some() {
                    return fail("star import must stand alone");
                }
                return Ok(());
            }
            for a in names {
                ident(&a.name)?;
                a.asname.iter().try_for_each(|n| ident(n))?;
            }
            Ok(())
        }
        StmtKind::Return(v) => v.iter().try_for_each(expr),
        StmtKind::Pass | StmtKind::Break | StmtKind::Continue => Ok(()),
        StmtKind::Raise { exc, cause } => {
            if exc.is_none() && cause.is_some() {
                return fail("raise ... from without exception");
            }
            exc.iter().chain(cause).try_for_each(expr)
        }
        StmtKind::Assert { test, msg } => {
            expr(test)?;
            msg.iter().try_for_each(expr)
        }
        StmtKind::Assign { targets, value } => {
            if targets.is_empty() {
                return fail("assignment without targets");
            }
            targets.iter().try_for_each(expr)?;
            expr(value)
        }
        StmtKind::AugAssign { target, value, .. } => {
            expr(target)?;
            expr(value)
        }
        StmtKind::AnnAssign {
            target,
            annotation,
            value,
        } => {
            expr(target)?;
            expr(annotation)?;
            value.iter().try_for_each(expr)
        }
        StmtKind::Expr(e) => expr(e),
        StmtKind::Global(names) | StmtKind::Nonlocal(names) => {
            if names.is_empty() {
                return fail("global/nonlocal without names");
            }
            names.iter().try_for_each(|n| ident(n))
        }
        StmtKind::Delete(targets) => {
            if targets.is_empty() {
                return fail("del without targets");
            }
            targets.iter().try_for_each(expr)
        }
        StmtKind::Comment(c) => {
            if c.text.contains(['\n', '\r']) {
                return fail("comment text spans lines");
            }
            Ok(())
        }
    }
}

fn keyword(k: &Keyword) -> Result<(), EmitError> {
    k.arg.iter().try_for_each(|a| ident(a))?;
    expr(&k.value)
}

fn generators(gens: &[Comprehension]) -> Result<(), EmitError> {
    if gens.is_empty() {
        return fail("comprehension without clauses");
    }
    for g in gens {
        expr(&g.target)?;
        expr(&g.iter)?;
        g.ifs.iter().try_for_each(expr)?;
    }
    Ok(())
}

fn fpieces(pieces: &[FPiece]) -> Result<(), EmitError> {
    for p in pieces {
        if let FPiece::Interpolation {
            expr: e, format_spec, ..
        } = p
        {
            expr(e)?;
            if let Some(spec) = format_spec {
                fpieces(spec)?;
            }
        }
    }
    Ok(())
}

fn expr(e: &Expr) -> Result<(), EmitError> {
    match &e.kind {
        ExprKind::Name(n) => ident(n),
        ExprKind::Int(raw) | ExprKind::Float(raw) => {
            if raw.is_empty() {
                fail("empty numeric literal")
            } else {
                Ok(())
            }
        }
        ExprKind::Str(parts) => {
            if parts.is_empty() {
                return fail("string without parts");
            }
            for p in parts {
                if let StrPart::Formatted(f) = p {
                    fpieces(&f.pieces)?;
                }
            }
            Ok(())
        }
        ExprKind::Bool(_) | ExprKind::NoneLit => Ok(()),
        ExprKind::Tuple(items) | ExprKind::List(items) => items.iter().try_for_each(expr),
        ExprKind::Set(items) => {
            if items.is_empty() {
                return fail("empty set display");
            }
            items.iter().try_for_each(expr)
        }
        ExprKind::Dict(items) => items.iter().try_for_each(|i| match i {
            DictItem::Pair(k, v) => expr(k).and_then(|_| expr(v)),
            DictItem::Unpack(v) => expr(v),
        }),
        ExprKind::ListComp { elt, generators: g }
        | ExprKind::SetComp { elt, generators: g }
        | ExprKind::GenExp { elt, generators: g } => {
            expr(elt)?;
            generators(g)
        }
        ExprKind::DictComp {
            key,
            value,
            generators: g,
        } => {
            expr(key)?;
            expr(value)?;
            generators(g)
        }
        ExprKind::BinOp { left, right, .. } => expr(left).and_then(|_| expr(right)),
        ExprKind::UnaryOp { operand, .. } => expr(operand),
        ExprKind::BoolOp { values, .. } => {
            if values.len() < 2 {
                return fail("boolean operation needs two operands");
            }
            values.iter().try_for_each(expr)
        }
        ExprKind::Compare { left, ops } => {
            if ops.is_empty() {
                return fail("comparison without operators");
            }
            expr(left)?;
            ops.iter().try_for_each(|(_, e)| expr(e))
        }
        ExprKind::Call { func, args, keywords } => {
            expr(func)?;
            args.iter().try_for_each(expr)?;
            keywords.iter().try_for_each(keyword)
        }
        ExprKind::Attribute { value, attr } => {
            ident(attr)?;
            expr(value)
        }
        ExprKind::Subscript { value, index } => expr(value).and_then(|_| expr(index)),
        ExprKind::Slice { lower, upper, step } => {
            lower.iter().chain(upper).chain(step).try_for_each(|e| expr(e))
        }
        ExprKind::Lambda { params: p, body } => {
            params(p, true)?;
            expr(body)
        }
        ExprKind::IfExp { test, body, orelse } => {
            expr(test)?;
            expr(body)?;
            expr(orelse)
        }
        ExprKind::Starred(v) => expr(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_block_is_rejected() {
        let m = Module {
            body: vec![Stmt::new(StmtKind::While {
                test: Expr::name("x"),
                body: vec![Stmt::new(StmtKind::Comment(Comment {
                    text: " only".into(),
                    placement: CommentPlacement::OwnLine,
                }))],
                orelse: None,
            })],
        };
        assert!(validate(&m).is_err());
    }

    #[test]
    fn keywords_are_not_names() {
        assert!(!is_identifier("lambda"));
        assert!(is_identifier("match"));
        assert!(is_identifier("_x1"));
        assert!(!is_identifier("1x"));
    }
}
