//! Python to SimPy and back, always through the AST.

mod behavior;
mod fuzz;
mod report;

use crate::error::{EmitError, ParseError};
use crate::grammar::GrammarTokenTable;
use crate::{emit_python, emit_simpy, parse_python, parse_simpy};

pub use behavior::{run_behavior_suite, solutions, BehaviorCase, BehaviorError, Outcomes};
pub use fuzz::{
    case_seed, fuzz_roundtrip, fuzz_roundtrip_table, fuzz_roundtrip_with, AstGenerator, Counterexample,
    FuzzSummary, MAX_COUNTEREXAMPLES,
};
pub use report::{
    roundtrip_check, strip_whitespace, text_equal_ignoring_whitespace, write_csv, write_jsonl,
    RoundTripReport, Stage,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConvertError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Emit(#[from] EmitError),
}

pub fn py_to_simpy(source: &str, table: &GrammarTokenTable) -> Result<String, ConvertError> {
    Ok(emit_simpy(&parse_python(source)?, table)?)
}

pub fn simpy_to_py(source: &str, table: &GrammarTokenTable) -> Result<String, ConvertError> {
    Ok(emit_python(&parse_simpy(source, table)?)?)
}
