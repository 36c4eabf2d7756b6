//! Versioned JSON envelope for trees. Internal format, not a public contract.

use serde::{Deserialize, Serialize};

use super::Module;

pub const FORMAT_VERSION: u32 = 1;
const FORMAT_TAG: &str = "simpy-ast";

#[derive(Debug, thiserror::Error)]
pub enum SerialError {
    #[error("malformed AST document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("not an AST document (format tag {0:?})")]
    WrongFormat(String),
    #[error("unsupported AST format version {0}")]
    Version(u32),
}

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    format: String,
    version: u32,
    module: T,
}

pub fn serialize(module: &Module) -> String {
    let env = Envelope {
        format: FORMAT_TAG.to_string(),
        version: FORMAT_VERSION,
        module,
    };
    serde_json::to_string(&env).expect("AST values always serialize")
}

pub fn deserialize(text: &str) -> Result<Module, SerialError> {
    let env: Envelope<Module> = serde_json::from_str(text)?;
    if env.format != FORMAT_TAG {
        return Err(SerialError::WrongFormat(env.format));
    }
    if env.version != FORMAT_VERSION {
        return Err(SerialError::Version(env.version));
    }
    Ok(env.module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{Expr, Stmt, StmtKind};

    #[test]
    fn round_trip() {
        let m = Module {
            body: vec![Stmt::new(StmtKind::Expr(Expr::name("x")))],
        };
        assert_eq!(deserialize(&serialize(&m)).unwrap(), m);
    }

    #[test]
    fn rejects_other_versions() {
        let text = serialize(&Module::default()).replace("\"version\":1", "\"version\":7");
        assert!(matches!(deserialize(&text), Err(SerialError::Version(7))));
    }
}
