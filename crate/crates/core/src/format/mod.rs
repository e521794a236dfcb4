//! Textual formats: diagram expressions, polygraph files, reports and
//! TikZ emission. Every serializer round-trips through its parser.

pub mod expr;
pub mod polygraph;
pub mod report;
pub mod tikz;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown generator `{name}` at line {line}, column {col}")]
    UnknownGenerator { name: String, line: usize, col: usize },
    #[error("line {line}: {msg}")]
    Invalid { line: usize, msg: String },
}

impl ParseError {
    pub fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax { line, col, msg: msg.into() }
    }
}
