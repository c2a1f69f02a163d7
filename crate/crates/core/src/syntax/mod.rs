//! Turtle and TriG parsing and serialization.

pub(crate) mod cursor;
mod parser;
mod serializer;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::rdf::{Iri, TermError};

pub(crate) use parser::read_list;
pub use parser::{parse_trig, parse_trig_with_base, parse_turtle, parse_turtle_with_base};
pub use serializer::serialize_trig;

/// A syntax error with a 1-based position counted in Unicode scalar values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub snippet: String,
}

impl ParseError {
    pub(crate) fn at(src: &str, byte_pos: usize, message: impl Into<String>) -> Self {
        let byte_pos = byte_pos.min(src.len());
        let before = &src[..byte_pos];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map(|i| i + 1).unwrap_or(0);
        let column = before[line_start..].chars().count() + 1;
        let line_end = src[line_start..]
            .find('\n')
            .map(|i| line_start + i)
            .unwrap_or(src.len());
        Self {
            line,
            column,
            message: message.into(),
            snippet: src[line_start..line_end].trim_end_matches('\r').to_string(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("parse error at {0}")]
    Parse(ParseError),
    #[error("graph block nested inside another graph block at {0}")]
    NestedGraph(ParseError),
    #[error("canonical serialization cannot contain blank node _:{0}")]
    BlankNodeInCanonical(String),
}

impl SyntaxError {
    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            SyntaxError::Parse(e) | SyntaxError::NestedGraph(e) => Some((e.line, e.column)),
            SyntaxError::BlankNodeInCanonical(_) => None,
        }
    }
}

impl From<ParseError> for SyntaxError {
    fn from(e: ParseError) -> Self {
        SyntaxError::Parse(e)
    }
}

/// Prefix label to namespace IRI associations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PrefixTable {
    entries: BTreeMap<String, Iri>,
}

impl PrefixTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The prefixes the engine's own documents and fixtures rely on.
    pub fn common() -> Self {
        use crate::rdf::vocab::{rdf, rdfs, xsd};
        let mut t = Self::new();
        for (label, ns) in [("rdf", rdf::NS), ("rdfs", rdfs::NS), ("xsd", xsd::NS)] {
            t.insert(label, Iri::new_unchecked(ns));
        }
        t
    }

    pub fn insert(&mut self, label: impl Into<String>, namespace: Iri) -> Option<Iri> {
        self.entries.insert(label.into(), namespace)
    }

    pub fn get(&self, label: &str) -> Option<&Iri> {
        self.entries.get(label)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn expand(&self, label: &str, local: &str) -> Option<Result<Iri, TermError>> {
        self.get(label).map(|ns| Iri::new(format!("{}{}", ns.as_str(), local)))
    }

    /// Adds every entry of `other` that is not already defined here.
    pub fn merge_missing(&mut self, other: &PrefixTable) {
        for (k, v) in other.iter() {
            self.entries.entry(k.to_string()).or_insert_with(|| v.clone());
        }
    }

    /// Longest-namespace compaction to `prefix:local`, if the local part is
    /// a safe prefixed-name local.
    pub fn compact(&self, iri: &Iri) -> Option<String> {
        let s = iri.as_str();
        self.entries
            .iter()
            .filter(|(_, ns)| s.starts_with(ns.as_str()))
            .max_by_key(|(_, ns)| ns.as_str().len())
            .and_then(|(label, ns)| {
                let local = &s[ns.as_str().len()..];
                safe_local(local).then(|| format!("{label}:{local}"))
            })
    }
}

fn safe_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
            !local.ends_with('.') && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
        }
        _ => false,
    }
}
