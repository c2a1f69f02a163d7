//! An R2RML subset over CSV tables, with subject- and predicate-object-level
//! graph maps that route triples into named graphs.

mod execute;
mod parse;
mod table;
mod template;

pub use execute::{execute, execute_dir};
pub use parse::{parse_mapping, MAPPING_BASE};
pub use table::{load_tables, LogicalTable};
pub use template::{expand_template, Segment, Template, TermType};

use crate::rdf::{Iri, Term};
use crate::syntax::{PrefixTable, SyntaxError};

#[derive(Debug, thiserror::Error)]
pub enum MappingError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("unsupported R2RML feature: {0}")]
    UnsupportedR2RML(String),
    #[error("triples map {map} is missing {field}")]
    MissingField { map: String, field: &'static str },
    #[error("invalid mapping: {0}")]
    Invalid(String),
    #[error("NULL cell in column '{0}'")]
    NullCell(String),
    #[error("unknown column '{0}'")]
    UnknownColumn(String),
    #[error("logical table '{0}' not found")]
    TableNotFound(String),
    #[error("template produced an invalid IRI: {0}")]
    InvalidIri(String),
    #[error("table '{table}': {message}")]
    Table { table: String, message: String },
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermMapSpec {
    Constant(Term),
    Template {
        template: Template,
        term_type: TermType,
        language: Option<String>,
        datatype: Option<Iri>,
    },
    /// Subject of another map, evaluated on the same row.
    ParentRef(Iri),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubjectMapSpec {
    pub template: Template,
    pub classes: Vec<Iri>,
    pub graph_templates: Vec<Template>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateObjectMapSpec {
    pub predicate: Iri,
    pub object: TermMapSpec,
    pub graph_templates: Vec<Template>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplesMapSpec {
    pub name: Iri,
    pub table: String,
    pub subject: SubjectMapSpec,
    pub poms: Vec<PredicateObjectMapSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MappingDocument {
    /// Sorted by name.
    pub maps: Vec<TriplesMapSpec>,
    pub prefixes: PrefixTable,
}

impl MappingDocument {
    pub fn get(&self, name: &Iri) -> Option<&TriplesMapSpec> {
        self.maps.iter().find(|m| &m.name == name)
    }

    /// Distinct logical table names, sorted.
    pub fn table_names(&self) -> Vec<String> {
        let mut names: Vec<String> = self.maps.iter().map(|m| m.table.clone()).collect();
        names.sort();
        names.dedup();
        names
    }
}
