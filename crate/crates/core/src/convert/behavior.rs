//! Runs each bundled solution's unit tests before and after a SimPy round
//! trip and compares the outcomes test by test.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde::Serialize;

use crate::grammar::GrammarTokenTable;

#[derive(Debug, thiserror::Error)]
pub enum BehaviorError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot run {0}: {1}")]
    Interpreter(String, std::io::Error),
    #[error("{0} has no run_tests.py")]
    NoRunner(PathBuf),
}

/// Outcome per test name: `pass`, `fail` or `error:<ExceptionType>`.
pub type Outcomes = BTreeMap<String, String>;

#[derive(Debug, Clone, Serialize)]
pub struct BehaviorCase {
    pub name: String,
    pub original: Outcomes,
    pub roundtrip: Outcomes,
    pub error: Option<String>,
}

impl BehaviorCase {
    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.original.is_empty() && self.original == self.roundtrip
    }
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> BehaviorError + '_ {
    move |source| BehaviorError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Solutions are `NAME.py` files with a sibling `NAME.tests.py`.
pub fn solutions(dir: &Path) -> Result<Vec<(String, PathBuf, PathBuf)>, BehaviorError> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io(dir))? {
        let path = entry.map_err(io(dir))?.path();
        let Some(file) = path.file_name().and_then(|f| f.to_str()) else {
            continue;
        };
        let Some(stem) = file.strip_suffix(".tests.py") else {
            continue;
        };
        let solution = dir.join(format!("{stem}.py"));
        if solution.exists() {
            out.push((stem.to_string(), solution, path.clone()));
        }
    }
    out.sort();
    Ok(out)
}

fn run(python: &str, runner: &Path, solution: &Path, tests: &Path) -> Result<Outcomes, String> {
    let out = Command::new(python)
        .arg(runner)
        .arg(solution)
        .arg(tests)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).trim().to_string());
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

pub fn run_behavior_suite(
    dir: &Path,
    table: &GrammarTokenTable,
    python: &str,
) -> Result<Vec<BehaviorCase>, BehaviorError> {
    let runner = dir.join("run_tests.py");
    if !runner.exists() {
        return Err(BehaviorError::NoRunner(dir.to_path_buf()));
    }
    Command::new(python)
        .arg("--version")
        .output()
        .map_err(|e| BehaviorError::Interpreter(python.to_string(), e))?;

    let scratch = std::env::temp_dir().join(format!("simpy-behavior-{}", std::process::id()));
    std::fs::create_dir_all(&scratch).map_err(io(&scratch))?;
    let mut cases = Vec::new();
    for (name, solution, tests) in solutions(dir)? {
        let source = std::fs::read_to_string(&solution).map_err(io(&solution))?;
        let mut case = BehaviorCase {
            name: name.clone(),
            original: Outcomes::new(),
            roundtrip: Outcomes::new(),
            error: None,
        };
        let converted = super::py_to_simpy(&source, table)
            .and_then(|s| super::simpy_to_py(&s, table))
            .map_err(|e| e.to_string());
        let result = converted.and_then(|back| {
            let copy = scratch.join(format!("{name}.py"));
            std::fs::write(&copy, back).map_err(|e| e.to_string())?;
            case.original = run(python, &runner, &solution, &tests)?;
            case.roundtrip = run(python, &runner, &copy, &tests)?;
            Ok(())
        });
        case.error = result.err();
        cases.push(case);
    }
    let _ = std::fs::remove_dir_all(&scratch);
    Ok(cases)
}
