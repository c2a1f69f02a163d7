//! A SPARQL subset: SELECT and CONSTRUCT over basic graph patterns with
//! GRAPH, OPTIONAL, FILTER, VALUES and one-or-more paths on a single IRI.
//!
//! Patterns outside GRAPH see the union of all graphs in the dataset.

mod ast;
mod eval;
mod json;
mod parser;

pub use ast::*;
pub use eval::{evaluate, evaluate_with_bindings, order_terms, QueryResult, Solutions};
pub use json::{
    solutions_from_json, solutions_to_json, solutions_to_value, term_from_json, term_to_json, ResultsJsonError,
};
pub use parser::{parse_query, parse_query_with_prefixes};

use crate::syntax::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QueryError {
    #[error("query parse error at {0}")]
    Parse(ParseError),
    #[error("unsupported SPARQL feature '{feature}' at {line}:{column}")]
    Unsupported {
        feature: String,
        line: usize,
        column: usize,
    },
    #[error("malformed query: {0}")]
    Eval(String),
}

impl QueryError {
    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            QueryError::Parse(e) => Some((e.line, e.column)),
            QueryError::Unsupported { line, column, .. } => Some((*line, *column)),
            QueryError::Eval(_) => None,
        }
    }
}
