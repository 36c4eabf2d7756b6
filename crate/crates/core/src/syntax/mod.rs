//! Pieces shared by the Python and SimPy frontends.

pub mod fstring;
pub mod parser;
pub mod term;
pub mod token;
pub mod writer;
