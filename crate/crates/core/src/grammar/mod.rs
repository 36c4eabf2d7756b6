//! The grammar token table: which Python terminals SimPy respells, merges,
//! drops or turns into separators, and in which production.

mod dialect;

use std::collections::{HashMap, HashSet};
use std::path::Path;

pub use dialect::{Dialect, Spelling};

/// The shipped table.
pub const DEFAULT_TABLE: &str = include_str!("default_table.tsv");

/// Placeholder count of the shipped table.
pub const DEFAULT_PLACEHOLDER_COUNT: usize = 78;

/// Placeholders the shipped table must define.
pub const MANDATORY_PLACEHOLDERS: [&str; 9] = [
    "<def_stmt>",
    "<class_stmt>",
    "<if_stmt>",
    "<true>",
    "<ge>",
    "<block_start>",
    "<block_end>",
    "<line_sep>",
    "<concat>",
];

pub const GLOBAL: &str = "global";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: placeholder {token:?} does not match <[a-z_]+>")]
    BadPattern { line: usize, token: String },
    #[error("line {line}: duplicate placeholder {token:?}")]
    DuplicatePlaceholder { line: usize, token: String },
    #[error("line {line}: duplicate entry for {terminal:?} in context {context:?}")]
    DuplicateEntry {
        line: usize,
        terminal: String,
        context: String,
    },
    #[error("default table has {found} placeholders, expected {expected}")]
    WrongCount { found: usize, expected: usize },
    #[error("default table lacks mandatory placeholder {0:?}")]
    MissingMandatory(String),
    #[error("cannot read table: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Action {
    Replace,
    Merge,
    Drop,
    WhitespaceSeparator,
}

impl Action {
    pub fn as_str(self) -> &'static str {
        match self {
            Action::Replace => "replace",
            Action::Merge => "merge",
            Action::Drop => "drop",
            Action::WhitespaceSeparator => "whitespace-separator",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "replace" => Action::Replace,
            "merge" => Action::Merge,
            "drop" => Action::Drop,
            "whitespace-separator" => Action::WhitespaceSeparator,
            _ => return None,
        })
    }

    pub fn has_placeholder(self) -> bool {
        matches!(self, Action::Replace | Action::Merge)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct TableEntry {
    pub context: String,
    pub action: Action,
    /// Space-separated Python terminals; layout terminals are written
    /// `NEWLINE`, `INDENT`, `DEDENT`, `STRING`.
    pub python_terminal: String,
    /// Placeholder for `replace`/`merge`; `None` for the other actions.
    pub simpy_token: Option<String>,
}

#[derive(Debug, Clone)]
pub struct GrammarTokenTable {
    entries: Vec<TableEntry>,
    version: String,
    index: HashMap<(String, String), usize>,
    dialect: Option<Dialect>,
}

impl PartialEq for GrammarTokenTable {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries && self.version == other.version
    }
}

/// Where to load a table from.
#[derive(Debug, Clone, Copy)]
pub enum TableSource<'a> {
    Default,
    Path(&'a Path),
}

pub fn load_table(source: TableSource<'_>) -> Result<GrammarTokenTable, TableError> {
    match source {
        TableSource::Default => Ok(GrammarTokenTable::default_table()),
        TableSource::Path(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| TableError::Io(format!("{}: {e}", path.display())))?;
            GrammarTokenTable::parse(&text)
        }
    }
}

pub fn is_placeholder_pattern(s: &str) -> bool {
    s.len() > 2
        && s.starts_with('<')
        && s.ends_with('>')
        && s[1..s.len() - 1]
            .bytes()
            .all(|b| b.is_ascii_lowercase() || b == b'_')
}

impl GrammarTokenTable {
    pub fn default_table() -> Self {
        let table = Self::parse(DEFAULT_TABLE).expect("shipped table parses");
        table.check_default().expect("shipped table is complete");
        table
    }

    /// Parses and validates the table file format.
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut entries = Vec::new();
        let mut lines = Vec::new();
        let mut version = String::from("unversioned");
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim_end_matches('\r');
            if let Some(comment) = trimmed.trim_start().strip_prefix('#') {
                if let Some(v) = comment.trim().strip_prefix("version:") {
                    version = v.trim().to_string();
                }
                continue;
            }
            if trimmed.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = trimmed.split('\t').collect();
            let [context, action, terminal, token] = fields[..] else {
                return Err(TableError::Format {
                    line,
                    message: format!("expected 4 tab-separated fields, found {}", fields.len()),
                });
            };
            let format = |message: String| TableError::Format { line, message };
            let action = Action::parse(action).ok_or_else(|| format(format!("unknown action {action:?}")))?;
            if context.is_empty() || terminal.trim().is_empty() {
                return Err(format("empty context or terminal".into()));
            }
            let terminal = terminal.split_whitespace().collect::<Vec<_>>().join(" ");
            let simpy_token = if action.has_placeholder() {
                if !is_placeholder_pattern(token) {
                    return Err(TableError::BadPattern {
                        line,
                        token: token.to_string(),
                    });
                }
                Some(token.to_string())
            } else {
                if token != "-" {
                    return Err(format(format!("{} entries take `-` as token", action.as_str())));
                }
                None
            };
            if action == Action::Merge && !terminal.contains(' ') {
                return Err(format("merge entries need at least two terminals".into()));
            }
            if !action.has_placeholder() && context == GLOBAL {
                return Err(format(format!(
                    "{} entries must name a production",
                    action.as_str()
                )));
            }
            entries.push(TableEntry {
                context: context.to_string(),
                action,
                python_terminal: terminal,
                simpy_token,
            });
            lines.push(line);
        }
        Self::from_entries(entries, version, &lines)
    }

    fn from_entries(entries: Vec<TableEntry>, version: String, lines: &[usize]) -> Result<Self, TableError> {
        let mut index = HashMap::new();
        let mut seen = HashSet::new();
        for (i, e) in entries.iter().enumerate() {
            let line = lines.get(i).copied().unwrap_or(i + 1);
            if let Some(token) = &e.simpy_token {
                if !seen.insert(token.clone()) {
                    return Err(TableError::DuplicatePlaceholder {
                        line,
                        token: token.clone(),
                    });
                }
            }
            let key = (e.python_terminal.clone(), e.context.clone());
            if index.insert(key, i).is_some() {
                return Err(TableError::DuplicateEntry {
                    line,
                    terminal: e.python_terminal.clone(),
                    context: e.context.clone(),
                });
            }
        }
        let mut table = GrammarTokenTable {
            entries,
            version,
            index,
            dialect: None,
        };
        table.dialect = Some(Dialect::new(&table));
        Ok(table)
    }

    /// Checks the extra invariants of the shipped table.
    pub fn check_default(&self) -> Result<(), TableError> {
        let found = self.placeholders().count();
        if found != DEFAULT_PLACEHOLDER_COUNT {
            return Err(TableError::WrongCount {
                found,
                expected: DEFAULT_PLACEHOLDER_COUNT,
            });
        }
        for m in MANDATORY_PLACEHOLDERS {
            if !self.placeholders().any(|p| p == m) {
                return Err(TableError::MissingMandatory(m.to_string()));
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn placeholders(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().filter_map(|e| e.simpy_token.as_deref())
    }

    /// Most specific entry: the exact context first, then `global`.
    pub fn lookup(&self, python_terminal: &str, context: &str) -> Option<&TableEntry> {
        let get = |ctx: &str| {
            self.index
                .get(&(python_terminal.to_string(), ctx.to_string()))
                .map(|&i| &self.entries[i])
        };
        get(context).or_else(|| get(GLOBAL))
    }

    pub fn dialect(&self) -> &Dialect {
        self.dialect.as_ref().expect("dialect built at construction")
    }

    /// A copy without the entry producing `placeholder`.
    pub fn without(&self, placeholder: &str) -> Result<Self, TableError> {
        let entries: Vec<_> = self
            .entries
            .iter()
            .filter(|e| e.simpy_token.as_deref() != Some(placeholder))
            .cloned()
            .collect();
        let lines: Vec<_> = (1..=entries.len()).collect();
        Self::from_entries(entries, format!("{}-without-{placeholder}", self.version), &lines)
    }

    /// Serializes back to the table file format.
    pub fn to_tsv(&self) -> String {
        let mut out = format!(
            "# context\taction\tpython_terminal\tsimpy_token\n# version: {}\n",
            self.version
        );
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                e.context,
                e.action.as_str(),
                e.python_terminal,
                e.simpy_token.as_deref().unwrap_or("-")
            ));
        }
        out
    }
}

impl Default for GrammarTokenTable {
    fn default() -> Self {
        Self::default_table()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_has_78_placeholders() {
        let t = GrammarTokenTable::default_table();
        assert_eq!(t.placeholders().count(), 78);
        assert!(t.check_default().is_ok());
    }

    #[test]
    fn lookups() {
        let t = GrammarTokenTable::default_table();
        let tok = |term: &str, ctx: &str| {
            t.lookup(term, ctx)
                .and_then(|e| e.simpy_token.clone())
                .unwrap_or_default()
        };
        assert_eq!(tok("def", GLOBAL), "<def_stmt>");
        assert_eq!(tok("True", GLOBAL), "<true>");
        assert_eq!(tok(">=", GLOBAL), "<ge>");
        assert!(t.lookup(".", GLOBAL).is_none());
        assert_eq!(
            t.lookup(",", "with_stmt").map(|e| e.action),
            Some(Action::WhitespaceSeparator)
        );
        // Context beats global; unknown contexts fall back to global.
        assert_eq!(tok("if", "expression"), "<if>");
        assert_eq!(tok("if", "while_stmt"), "<if_stmt>");
        assert_eq!(
            t.lookup(":", "function_def").map(|e| e.action),
            Some(Action::Drop)
        );
        assert!(t.lookup(":", GLOBAL).is_none());
    }

    #[test]
    fn duplicate_placeholder_is_rejected() {
        let text = format!("{DEFAULT_TABLE}comparison\treplace\t=>\t<ge>\n");
        assert!(matches!(
            GrammarTokenTable::parse(&text),
            Err(TableError::DuplicatePlaceholder { .. })
        ));
    }

    #[test]
    fn bad_pattern_and_format() {
        assert!(matches!(
            GrammarTokenTable::parse("global\treplace\tdef\t<Def>\n"),
            Err(TableError::BadPattern { .. })
        ));
        assert!(matches!(
            GrammarTokenTable::parse("global\treplace\tdef\n"),
            Err(TableError::Format { .. })
        ));
        assert!(matches!(
            GrammarTokenTable::parse("global\tdrop\t:\t-\n"),
            Err(TableError::Format { .. })
        ));
        assert!(matches!(
            GrammarTokenTable::parse("global\tmerge\tdef\t<x>\n"),
            Err(TableError::Format { .. })
        ));
    }

    #[test]
    fn small_table_is_not_default() {
        let t = GrammarTokenTable::parse("global\treplace\tdef\t<def_stmt>\n").unwrap();
        assert!(matches!(
            t.check_default(),
            Err(TableError::WrongCount { found: 1, .. })
        ));
    }

    #[test]
    fn tsv_round_trip() {
        let t = GrammarTokenTable::default_table();
        assert_eq!(GrammarTokenTable::parse(&t.to_tsv()).unwrap(), t);
    }

    #[test]
    fn without_removes_one_placeholder() {
        let t = GrammarTokenTable::default_table().without("<block_end>").unwrap();
        assert_eq!(t.placeholders().count(), 77);
    }
}
