//! Text formats: the germ language, net files, sample and value CSV.

mod ast;
mod csv;
mod eval;
mod lexer;
mod net;
mod parser;

use std::fmt;

pub use ast::{format_germ_file, Anchors, Definition, GermExpr};
pub use csv::{parse_sample_csv, values_csv, SAMPLE_HEADER, VALUES_HEADER};
pub use eval::Env;
pub use net::{parse_net_file, NetFile, NodeSource};
pub use parser::{parse_definition, parse_germ, parse_germ_file};

use crate::error::GermError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: Option<String>,
}

impl ParseError {
    pub fn new(line: usize, column: usize, expected: impl Into<String>) -> ParseError {
        ParseError { line, column, expected: expected.into(), found: None }
    }

    pub fn found(mut self, found: impl Into<String>) -> ParseError {
        self.found = Some(found.into());
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: expected {}", self.line, self.column, self.expected)?;
        if let Some(x) = &self.found {
            write!(f, ", found {x}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub enum DslError {
    Parse(ParseError),
    /// A definition that parses but does not evaluate.
    Semantic { name: String, line: usize, error: GermError },
    Unknown(String),
    Germ(GermError),
    Io(String),
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DslError::Parse(e) => write!(f, "parse error at {e}"),
            DslError::Semantic { name, line, error } => write!(f, "line {line}: {name}: {error}"),
            DslError::Unknown(n) => write!(f, "unknown name `{n}`"),
            DslError::Germ(e) => write!(f, "{e}"),
            DslError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for DslError {}

impl From<ParseError> for DslError {
    fn from(e: ParseError) -> DslError {
        DslError::Parse(e)
    }
}

impl From<GermError> for DslError {
    fn from(e: GermError) -> DslError {
        DslError::Germ(e)
    }
}
