//! Python and SimPy over one AST.
//!
//! SimPy is Python's grammar with layout and keywords respelled as
//! placeholder tokens from a [`grammar::GrammarTokenTable`]. Both frontends
//! parse into [`ast::Module`]; converting is parse then emit.

pub mod ast;
pub mod bench;
pub mod convert;
pub mod corpus;
pub mod error;
pub mod grammar;
pub mod python;
pub mod simpy;
pub mod syntax;
pub mod tokens;

pub use ast::{ast_dump, ast_equal, Module};
pub use error::{EmitError, LexError, ParseError};
pub use grammar::{load_table, GrammarTokenTable, TableError, TableSource};
pub use python::{emit_python, parse_python};
pub use simpy::{emit_simpy, lex_simpy, parse_simpy};
