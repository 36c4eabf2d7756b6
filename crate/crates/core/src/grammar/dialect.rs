//! Resolved spellings: what each grammar term looks like in SimPy under a
//! particular table.

use std::collections::{HashMap, HashSet};

use super::{Action, GrammarTokenTable};
use crate::syntax::term::Term;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Spelling {
    Placeholder(String),
    /// Retained Python text, one entry per Python token.
    Verbatim(Vec<String>),
    /// Removed entirely.
    Dropped,
    /// Replaced by a separator that is only written out when needed.
    Space,
}

impl Spelling {
    pub fn is_absent(&self) -> bool {
        matches!(self, Spelling::Dropped | Spelling::Space)
    }

    /// Text as written, joined; empty when absent.
    pub fn text(&self) -> String {
        match self {
            Spelling::Placeholder(p) => p.clone(),
            Spelling::Verbatim(parts) => parts.join(" "),
            Spelling::Dropped | Spelling::Space => String::new(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Dialect {
    spellings: HashMap<Term, Spelling>,
    placeholders: HashSet<String>,
    /// Spellings of terms that can extend a preceding expression.
    continuations: HashSet<String>,
}

impl Dialect {
    pub fn new(table: &GrammarTokenTable) -> Self {
        let mut spellings = HashMap::new();
        for term in Term::all() {
            let (terminal, context) = term.key();
            let spelling = match table.lookup(terminal, context) {
                Some(entry) => match entry.action {
                    Action::Replace | Action::Merge => {
                        Spelling::Placeholder(entry.simpy_token.clone().expect("validated placeholder entry"))
                    }
                    Action::Drop => Spelling::Dropped,
                    Action::WhitespaceSeparator => Spelling::Space,
                },
                None if term.python().is_empty() => Spelling::Dropped,
                None => Spelling::Verbatim(term.python().split(' ').map(str::to_string).collect()),
            };
            spellings.insert(term, spelling);
        }
        let placeholders = table.placeholders().map(str::to_string).collect();
        let continuations = spellings
            .iter()
            .filter(|(t, s)| t.continues_expression() && !s.is_absent())
            .map(|(_, s)| s.text())
            .collect();
        Dialect {
            spellings,
            placeholders,
            continuations,
        }
    }

    pub fn spelling(&self, term: Term) -> &Spelling {
        &self.spellings[&term]
    }

    pub fn is_placeholder(&self, text: &str) -> bool {
        self.placeholders.contains(text)
    }

    pub fn placeholders(&self) -> impl Iterator<Item = &str> {
        self.placeholders.iter().map(String::as_str)
    }

    /// True when `text`, written right after an expression, could be read as
    /// continuing it.
    pub fn continues(&self, text: &str) -> bool {
        self.continuations.contains(text)
    }

    /// A statement starting with `term` can follow a simple statement
    /// without a separator.
    pub fn separator_optional_before(&self, term: Term) -> bool {
        if !term.is_statement_initial() || term == Term::CommentMark {
            return false;
        }
        match self.spelling(term) {
            Spelling::Placeholder(p) => !self.continues(p),
            _ => false,
        }
    }
}
