//! Round-tripped solutions pass exactly the tests the originals pass.

use std::path::Path;
use std::process::Command;

use simpy_core::convert::run_behavior_suite;
use simpy_core::GrammarTokenTable;

#[test]
fn roundtrip_preserves_test_outcomes() {
    if Command::new("python3").arg("--version").output().is_err() {
        eprintln!("python3 not found; skipping behavior suite");
        return;
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/behavior");
    let cases = run_behavior_suite(&dir, &GrammarTokenTable::default_table(), "python3").unwrap();
    assert!(cases.len() >= 30, "{}", cases.len());
    for c in &cases {
        assert!(c.passed(), "{c:?}");
    }
    // The suite includes deliberately buggy solutions; their failures must survive too.
    let failing = cases
        .iter()
        .filter(|c| c.original.values().any(|v| v != "pass"))
        .count();
    assert!(failing >= 2, "{failing}");
}
