//! RDF terms, quads and the indexed in-memory [`Dataset`].

mod dataset;
mod term;
pub mod vocab;

pub use dataset::{Dataset, IndexOrder};
pub use term::{escape_string, BlankNode, GraphName, Iri, Literal, Quad, Subject, Term, TermError, Triple};
pub(crate) use term::{has_scheme as term_has_scheme, valid_language_tag as term_valid_language_tag};
