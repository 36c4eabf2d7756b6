//! Property tests over generated trees.

use std::collections::HashMap;

use proptest::prelude::*;
use simpy_core::ast::{self, visit, Expr, ExprKind, SourceSpan};
use simpy_core::convert::AstGenerator;
use simpy_core::*;

fn table() -> &'static GrammarTokenTable {
    static T: std::sync::OnceLock<GrammarTokenTable> = std::sync::OnceLock::new();
    T.get_or_init(GrammarTokenTable::default_table)
}

fn tree(seed: u64) -> Module {
    AstGenerator::new(seed).module()
}

/// Replace the `k`-th expression (pre-order over statements) with a fresh name.
fn mutate(m: &Module, k: usize) -> Option<Module> {
    let mut out = m.clone();
    let mut i = 0;
    let mut hit = false;
    visit::walk_exprs_mut(&mut out.body, &mut |e: &mut Expr| {
        if i == k && !matches!(e.kind, ExprKind::Slice { .. } | ExprKind::Starred(_)) {
            *e = Expr::name("zz_mutant");
            hit = true;
        }
        i += 1;
    });
    hit.then_some(out)
}

fn scatter_spans(m: &Module, salt: usize) -> Module {
    let mut out = m.clone();
    let mut i = salt;
    visit::walk_exprs_mut(&mut out.body, &mut |e: &mut Expr| {
        e.span = Some(SourceSpan::new(i, i + 3));
        i += 7;
    });
    for s in &mut out.body {
        s.span = Some(SourceSpan::new(salt, salt + 1));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn python_adjunction(seed in any::<u64>()) {
        let m = tree(seed);
        let text = emit_python(&m).unwrap();
        prop_assert!(ast_equal(&parse_python(&text).unwrap(), &m), "{}", text);
    }

    #[test]
    fn simpy_adjunction(seed in any::<u64>()) {
        let m = tree(seed);
        let text = emit_simpy(&m, table()).unwrap();
        prop_assert!(ast_equal(&parse_simpy(&text, table()).unwrap(), &m), "{}", text);
    }

    #[test]
    fn grammars_agree(seed in any::<u64>()) {
        let m = tree(seed);
        let py = parse_python(&emit_python(&m).unwrap()).unwrap();
        let sp = parse_simpy(&emit_simpy(&m, table()).unwrap(), table()).unwrap();
        prop_assert_eq!(ast_dump(&py), ast_dump(&sp));
    }

    #[test]
    fn emitters_are_deterministic(seed in any::<u64>()) {
        let m = tree(seed);
        prop_assert_eq!(emit_python(&m).unwrap(), emit_python(&m.clone()).unwrap());
        prop_assert_eq!(emit_simpy(&m, table()).unwrap(), emit_simpy(&m.clone(), table()).unwrap());
        let text = emit_python(&m).unwrap();
        prop_assert_eq!(emit_python(&parse_python(&text).unwrap()).unwrap(), text);
    }

    #[test]
    fn serialization_roundtrips(seed in any::<u64>()) {
        let m = scatter_spans(&tree(seed), 5);
        let back = ast::deserialize(&ast::serialize(&m)).unwrap();
        prop_assert!(ast_equal(&back, &m));
        prop_assert_eq!(ast::serialize(&back), ast::serialize(&m));
    }

    #[test]
    fn spans_do_not_matter(seed in any::<u64>(), salt in 0usize..1000) {
        let m = tree(seed);
        let moved = scatter_spans(&m, salt);
        prop_assert!(ast_equal(&m, &moved));
        prop_assert_eq!(ast_dump(&m), ast_dump(&moved));
        prop_assert_eq!(emit_simpy(&m, table()).unwrap(), emit_simpy(&moved, table()).unwrap());
    }

    #[test]
    fn mutation_changes_dump(seed in any::<u64>(), k in 0usize..40) {
        let m = tree(seed);
        if let Some(mutant) = mutate(&m, k) {
            prop_assert_eq!(ast_equal(&m, &mutant), ast_dump(&m) == ast_dump(&mutant));
        }
    }
}

#[test]
fn dump_is_injective_over_ten_thousand_trees() {
    let mut seen: HashMap<String, Module> = HashMap::new();
    let mut trees = 0;
    for seed in 0..10_000u64 {
        let m = tree(seed);
        let mut variants = vec![m.clone()];
        variants.extend((0..3).filter_map(|k| mutate(&m, k * 5)));
        for v in variants {
            let d = ast_dump(&v);
            if let Some(prev) = seen.get(&d) {
                assert!(ast_equal(prev, &v), "dump collision for seed {seed}:\n{d}");
            } else {
                seen.insert(d, v);
            }
            trees += 1;
        }
    }
    assert!(trees >= 10_000);
}

#[test]
fn parallel_fuzz_matches_sequential() {
    use simpy_core::convert::{fuzz_roundtrip_table, fuzz_roundtrip_with};
    let t = table();
    let par = fuzz_roundtrip_table(9, 300, t);
    let seq = fuzz_roundtrip_with(9, 300, t, &mut |g| g.module());
    assert_eq!(par, seq);
    assert!(par.passed());
}
