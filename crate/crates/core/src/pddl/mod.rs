//! STRIPS + typing subset of PDDL: model, reader and writer.
//!
//! The accepted grammar is documented in `docs/pddl-grammar.md`.

mod model;
mod parser;
pub mod sexpr;
mod writer;

pub use model::{ActionSchema, Atom, Domain, Predicate, Problem, State, TypedName, OBJECT_TYPE};
pub(crate) use parser::{check_ground_atom, merge_objects, read_ground_atom, read_typed_list};
pub use parser::{parse_domain, parse_problem};
pub(crate) use writer::typed_list;
pub use writer::{serialize, ToPddl};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unsupported feature `{token}` at line {line}")]
    Unsupported { line: usize, token: String },
    #[error("semantic error at line {line}: {message}")]
    Semantic { line: usize, message: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::Unsupported { line, .. }
            | ParseError::Semantic { line, .. } => *line,
        }
    }
}
