//! Worked examples for each public operation.

use simpy_core::ast::*;
use simpy_core::convert::{py_to_simpy, roundtrip_check, simpy_to_py};
use simpy_core::grammar::Action;
use simpy_core::python::{lex_python, PyTokenKind};
use simpy_core::simpy::SimpyTokenKind;
use simpy_core::*;

fn table() -> GrammarTokenTable {
    GrammarTokenTable::default_table()
}

fn assign(name: &str, value: &str) -> Stmt {
    Stmt::new(StmtKind::Assign {
        targets: vec![Expr::name(name)],
        value: Expr::int(value),
    })
}

fn module(body: Vec<Stmt>) -> Module {
    Module { body }
}

fn ret_fn() -> Module {
    module(vec![Stmt::new(StmtKind::FunctionDef(FunctionDef {
        name: "f".into(),
        params: Params {
            args: vec![Param::named("a")],
            ..Params::default()
        },
        returns: None,
        decorators: vec![],
        body: vec![Stmt::new(StmtKind::Return(Some(Expr::name("a"))))],
    }))])
}

#[test]
fn ast_equal_cases() {
    assert!(ast_equal(&Module::default(), &Module::default()));
    assert!(!ast_equal(
        &module(vec![assign("x", "1")]),
        &module(vec![assign("x", "2")])
    ));
    assert!(ast_equal(
        &parse_python("x = 1").unwrap(),
        &parse_python("x=1").unwrap()
    ));
}

#[test]
fn dump_cases() {
    assert_eq!(ast_dump(&Module::default()).lines().count(), 1);
    assert!(ast_dump(&Module::default()).starts_with("Module[]"));
    let a = parse_python("def f(a): return a").unwrap();
    let b = parse_python("def f(a):\n    return a").unwrap();
    assert_eq!(ast_dump(&a), ast_dump(&b));
    let t = table();
    let c = parse_simpy(&py_to_simpy("def f(a): return a", &t).unwrap(), &t).unwrap();
    assert_eq!(ast_dump(&a), ast_dump(&c));
}

#[test]
fn lex_python_cases() {
    let kinds = |s: &str| -> Vec<(PyTokenKind, String)> {
        lex_python(s)
            .unwrap()
            .into_iter()
            .map(|t| (t.kind, t.text))
            .collect()
    };
    assert_eq!(kinds(""), vec![(PyTokenKind::Eof, String::new())]);
    let got: Vec<PyTokenKind> = kinds("if x:\n    y\n").into_iter().map(|(k, _)| k).collect();
    use PyTokenKind::{Dedent, Eof, Indent, Keyword, Name, Newline, Op};
    assert_eq!(
        got,
        vec![Keyword, Name, Op, Newline, Indent, Name, Newline, Dedent, Eof]
    );
    let joined = kinds("a = (1 +\n 2)");
    let plus = joined.iter().position(|(_, t)| t == "+").unwrap();
    assert_eq!(joined[plus + 1].1, "2");
    assert!(lex_python("x = 'open").is_err());
    assert!(lex_python("if x:\n        y\n    z\n").is_err());
    assert!(lex_python("x = $").is_err());
}

#[test]
fn parse_python_cases() {
    assert_eq!(parse_python("x = 1").unwrap(), module(vec![assign("x", "1")]));
    assert_eq!(parse_python("def f(a):\n    return a").unwrap(), ret_fn());
    let m = parse_python("if x>=1:\n    pass").unwrap();
    let expected = module(vec![Stmt::new(StmtKind::If {
        test: Expr::new(ExprKind::Compare {
            left: Box::new(Expr::name("x")),
            ops: vec![(CmpOp::GtE, Expr::int("1"))],
        }),
        body: vec![Stmt::new(StmtKind::Pass)],
        elifs: vec![],
        orelse: None,
    })]);
    assert_eq!(m, expected);
    let err = parse_python("x = = 1").unwrap_err();
    assert!(err.span.start_byte <= 7);
}

#[test]
fn emit_python_cases() {
    assert_eq!(emit_python(&Module::default()).unwrap(), "");
    assert_eq!(emit_python(&module(vec![assign("x", "1")])).unwrap(), "x = 1\n");
    assert_eq!(emit_python(&ret_fn()).unwrap(), "def f(a):\n    return a\n");
    assert_eq!(
        emit_python(&parse_python("\u{feff}x=1").unwrap()).unwrap(),
        "x = 1\n"
    );
    assert_eq!(
        emit_python(&parse_python("if x:\n\ty = 1\n").unwrap()).unwrap(),
        "if x:\n    y = 1\n"
    );
}

#[test]
fn table_cases() {
    let t = table();
    assert_eq!(t.placeholders().count(), 78);
    let def = t.lookup("def", "global").unwrap();
    assert_eq!(def.simpy_token.as_deref(), Some("<def_stmt>"));
    assert_eq!(
        t.lookup("True", "global").unwrap().simpy_token.as_deref(),
        Some("<true>")
    );
    assert_eq!(
        t.lookup(">=", "global").unwrap().simpy_token.as_deref(),
        Some("<ge>")
    );
    assert!(t.lookup(".", "global").is_none());
    assert_eq!(
        t.lookup(",", "with_stmt").unwrap().action,
        Action::WhitespaceSeparator
    );
    for p in grammar::MANDATORY_PLACEHOLDERS {
        assert!(t.placeholders().any(|q| q == p), "{p} missing");
    }
    let dup = format!("{}\nglobal\treplace\tnonlocal2\t<ge>\n", t.to_tsv());
    assert!(matches!(
        GrammarTokenTable::parse(&dup),
        Err(TableError::DuplicatePlaceholder { .. })
    ));
}

#[test]
fn lex_simpy_cases() {
    let t = table();
    let kinds = |s: &str| -> Vec<(SimpyTokenKind, String)> {
        lex_simpy(s, &t)
            .unwrap()
            .into_iter()
            .map(|t| (t.kind, t.text))
            .collect()
    };
    assert_eq!(kinds(""), vec![(SimpyTokenKind::Eof, String::new())]);
    assert_eq!(
        kinds("<true>")[0],
        (SimpyTokenKind::Placeholder, "<true>".to_string())
    );
    let ge: Vec<SimpyTokenKind> = kinds("x<ge>1").into_iter().map(|(k, _)| k).collect();
    use SimpyTokenKind::{Eof, Identifier, Number, Placeholder};
    assert_eq!(ge, vec![Identifier, Placeholder, Number, Eof]);
    assert!(lex_simpy("x = $", &t).is_err());
    assert!(lex_simpy("<nonsense>", &t).is_ok_and(|toks| toks[0].kind != Placeholder));
}

#[test]
fn parse_simpy_cases() {
    let t = table();
    assert_eq!(
        parse_simpy("<pass_stmt>", &t).unwrap(),
        module(vec![Stmt::new(StmtKind::Pass)])
    );
    let s = py_to_simpy("def f(a):\n    return a", &t).unwrap();
    assert_eq!(ast_dump(&parse_simpy(&s, &t).unwrap()), ast_dump(&ret_fn()));
    assert!(parse_simpy("<pass_stmt><block_end>", &t).is_err());
    assert!(parse_simpy("<block_start>", &t).is_err());
    // Trailing block ends may be left off.
    assert_eq!(
        parse_simpy("<def_stmt>f a<block_start><return_stmt>a", &t).unwrap(),
        ret_fn()
    );
}

#[test]
fn emit_simpy_cases() {
    let t = table();
    assert_eq!(emit_simpy(&Module::default(), &t).unwrap(), "");
    let two = module(vec![assign("x", "1"), assign("y", "2")]);
    assert_eq!(emit_simpy(&two, &t).unwrap(), "x=1<line_sep>y=2");
    assert_eq!(
        emit_simpy(&ret_fn(), &t).unwrap(),
        "<def_stmt>f a<block_start><return_stmt>a<block_end>"
    );
    let after_simple = module(vec![assign("x", "1"), ret_fn().body.remove(0)]);
    assert_eq!(
        emit_simpy(&after_simple, &t).unwrap(),
        "x=1<def_stmt>f a<block_start><return_stmt>a<block_end>"
    );
}

#[test]
fn converter_cases() {
    let t = table();
    assert_eq!(py_to_simpy("pass\n", &t).unwrap(), "<pass_stmt>");
    let s = py_to_simpy("x >= True\n", &t).unwrap();
    assert!(s.contains("<ge>") && s.contains("<true>"), "{s}");
    assert_eq!(simpy_to_py("<pass_stmt>", &t).unwrap(), "pass\n");
    assert!(py_to_simpy("x = = 1", &t).is_err());
    let r = roundtrip_check("x", "x = 1\n", &t);
    assert!(r.ast_equal);
    assert!(r.simpy_token_count <= r.python_token_count);
}

#[test]
fn string_concat_uses_placeholder() {
    let t = table();
    let s = py_to_simpy("x = 'a' 'b'\ny = ['a', 'b']\n", &t).unwrap();
    assert!(s.contains("'a'<concat>'b'"), "{s}");
    assert!(s.contains("['a','b']"), "{s}");
}

#[test]
fn with_items_are_space_separated() {
    let t = table();
    let s = py_to_simpy("with a as b, c as d:\n    pass\n", &t).unwrap();
    assert!(s.contains("a<as>b c<as>d"), "{s}");
}

#[test]
fn import_from_drops_import() {
    let t = table();
    let s = py_to_simpy("from os import path\n", &t).unwrap();
    assert!(!s.contains("import"), "{s}");
    assert_eq!(simpy_to_py(&s, &t).unwrap(), "from os import path\n");
}
