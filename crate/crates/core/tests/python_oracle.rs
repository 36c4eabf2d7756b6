//! Differential check of the Python frontend against CPython's `ast` module.
//! Skipped when `python3` is not on PATH.

use std::path::{Path, PathBuf};
use std::process::Command;

use simpy_core::convert::AstGenerator;
use simpy_core::{ast, emit_python, parse_python, GrammarTokenTable};

const SNIPPETS: &[&str] = &[
    "x = 1\n",
    "a, *b = c\n",
    "x = a if b else c if d else e\n",
    "y = not a and b or c\n",
    "z = -a ** -b\n",
    "w = a < b <= c != d is not e not in f\n",
    "v = lambda a, /, b=1, *c, d, **e: a\n",
    "u = [x for x in y if x for z in x]\n",
    "t = {k: v for k, v in d.items()}\n",
    "s = f'{a!r:>{w}} and {b:.2f} {{x}}'\n",
    "r = b'\\x00' b'a'\n",
    "q = 'a' 'b' \"c\"\n",
    "p = x[1:2, ::3]\n",
    "def f(a, b: int = 2, *args, c, **kw) -> None:\n    return\n",
    "@a.b\n@c(1)\nclass C(B, metaclass=M):\n    x: int = 1\n",
    "try:\n    pass\nexcept (A, B) as e:\n    raise X from e\nelse:\n    pass\nfinally:\n    pass\n",
    "with a as b, c:\n    pass\n",
    "with (a as b, c as d):\n    pass\n",
    "for i in range(3):\n    continue\nelse:\n    break\n",
    "while x:\n    x -= 1\n",
    "if a:\n    pass\nelif b:\n    pass\nelse:\n    pass\n",
    "from . import a as b\nfrom ..m import *\nimport os.path as p\n",
    "global a, b\ndel a[0], b.c\nassert x, 'm'\n",
    "print(*a, **k, sep='')\n",
    "x = (a for b in c)\nf(a for b in c)\n",
    "x = 0x1F + 1_000 + 1e-3 + 2j + 0o7 + 0b1\n",
    "x = {**a, 'b': 1}\n",
    "x = {1, 2}\n",
    "x = ()\n",
    "x = (1,)\n",
    "x = a @ b // c % d << e >> f & g | h ^ ~i\n",
];

fn python3() -> Option<PathBuf> {
    let ok = Command::new("python3")
        .arg("-c")
        .arg("import ast")
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false);
    ok.then(|| PathBuf::from("python3"))
}

fn canon() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/oracle/canon.py")
}

fn write_pair(dir: &Path, name: &str, source: &str) {
    let m = parse_python(source).unwrap_or_else(|e| panic!("{name}: {e}"));
    std::fs::write(dir.join(format!("{name}.py")), source).unwrap();
    std::fs::write(dir.join(format!("{name}.json")), ast::serialize(&m)).unwrap();
}

fn run_oracle(dir: &Path) {
    let Some(py) = python3() else {
        eprintln!("python3 not found; skipping CPython oracle");
        return;
    };
    let out = Command::new(py).arg(canon()).arg(dir).output().unwrap();
    assert!(
        out.status.success(),
        "oracle mismatches:\n{}{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn snippets_match_cpython() {
    let dir = tempfile::tempdir().unwrap();
    for (i, s) in SNIPPETS.iter().enumerate() {
        write_pair(dir.path(), &format!("s{i}"), s);
    }
    run_oracle(dir.path());
}

#[test]
fn generated_programs_match_cpython() {
    let dir = tempfile::tempdir().unwrap();
    for i in 0..400u64 {
        let py = emit_python(&AstGenerator::new(i).module()).unwrap();
        write_pair(dir.path(), &format!("g{i}"), &py);
    }
    run_oracle(dir.path());
}

#[test]
fn simpy_roundtrip_matches_cpython() {
    // Parse back from SimPy and compare against CPython's view of the original.
    let t = GrammarTokenTable::default_table();
    let dir = tempfile::tempdir().unwrap();
    for i in 0..200u64 {
        let m = AstGenerator::new(1_000_000 + i).module();
        let py = emit_python(&m).unwrap();
        let s = simpy_core::emit_simpy(&parse_python(&py).unwrap(), &t).unwrap();
        let back = simpy_core::parse_simpy(&s, &t).unwrap();
        std::fs::write(dir.path().join(format!("r{i}.py")), &py).unwrap();
        std::fs::write(dir.path().join(format!("r{i}.json")), ast::serialize(&back)).unwrap();
    }
    run_oracle(dir.path());
}

#[test]
fn corpus_matches_cpython() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let dir = tempfile::tempdir().unwrap();
    let mut n = 0;
    for sub in ["stdlib", "behavior", "golden"] {
        let Ok(entries) = std::fs::read_dir(root.join(sub)) else {
            continue;
        };
        for e in entries {
            let p = e.unwrap().path();
            if p.extension().is_some_and(|x| x == "py") {
                let src = std::fs::read_to_string(&p).unwrap();
                write_pair(dir.path(), &format!("c{n}"), &src);
                n += 1;
            }
        }
    }
    assert!(n > 200, "corpus looks incomplete: {n} files");
    run_oracle(dir.path());
}
