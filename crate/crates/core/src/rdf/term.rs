use std::fmt;

use serde::{Deserialize, Serialize};

use super::vocab::{rdf, xsd};

/// Violations of the term-level invariants.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("IRI <{0}> is not absolute (missing scheme)")]
    RelativeIri(String),
    #[error("IRI <{0}> contains a forbidden character")]
    IllegalIriChar(String),
    #[error("blank node label {0:?} is empty or contains whitespace")]
    InvalidBlankNode(String),
    #[error("invalid language tag {0:?}")]
    InvalidLanguageTag(String),
    #[error("a literal with datatype rdf:langString needs a language tag")]
    LangStringWithoutTag,
    #[error("term {0} cannot be used as a {1}")]
    WrongPosition(String, &'static str),
}

/// An absolute IRI. Only the presence of a scheme is validated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Self, TermError> {
        let value = value.into();
        if !has_scheme(&value) {
            return Err(TermError::RelativeIri(value));
        }
        if value
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '\\' | '^' | '`'))
        {
            return Err(TermError::IllegalIriChar(value));
        }
        Ok(Self(value))
    }

    /// Builds an IRI from a value known to be valid (vocabulary constants).
    pub(crate) fn new_unchecked(value: impl Into<String>) -> Self {
        Self(value.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// The part after the last `#` or `/`, or the whole IRI if that part is empty.
    pub fn local_name(&self) -> &str {
        let s = self.0.as_str();
        let cut = s.rfind(['#', '/']).map(|i| i + 1).unwrap_or(0);
        let local = &s[cut..];
        if local.is_empty() {
            s
        } else {
            local
        }
    }
}

/// `scheme ":"` must come before any `/`, `?` or `#`.
pub(crate) fn has_scheme(value: &str) -> bool {
    let Some(colon) = value.find(':') else {
        return false;
    };
    if let Some(stop) = value.find(['/', '?', '#']) {
        if stop < colon {
            return false;
        }
    }
    let scheme = &value[..colon];
    let mut chars = scheme.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

impl TryFrom<String> for Iri {
    type Error = TermError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        Iri::new(value)
    }
}

impl From<Iri> for String {
    fn from(iri: Iri) -> Self {
        iri.0
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlankNode(String);

impl BlankNode {
    pub fn new(label: impl Into<String>) -> Result<Self, TermError> {
        let label = label.into();
        if label.is_empty() || label.chars().any(char::is_whitespace) {
            return Err(TermError::InvalidBlankNode(label));
        }
        Ok(Self(label))
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BlankNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

/// A literal. Field order matters: the derived ordering compares the
/// lexical form first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    lexical: String,
    datatype: Iri,
    language: Option<String>,
}

impl Literal {
    /// A plain `xsd:string` literal.
    pub fn simple(lexical: impl Into<String>) -> Self {
        Self {
            lexical: lexical.into(),
            datatype: Iri::new_unchecked(xsd::STRING),
            language: None,
        }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Result<Self, TermError> {
        if datatype.as_str() == rdf::LANG_STRING {
            return Err(TermError::LangStringWithoutTag);
        }
        Ok(Self {
            lexical: lexical.into(),
            datatype,
            language: None,
        })
    }

    /// Language tags are stored lowercased.
    pub fn lang(lexical: impl Into<String>, tag: &str) -> Result<Self, TermError> {
        if !valid_language_tag(tag) {
            return Err(TermError::InvalidLanguageTag(tag.to_string()));
        }
        Ok(Self {
            lexical: lexical.into(),
            datatype: Iri::new_unchecked(rdf::LANG_STRING),
            language: Some(tag.to_ascii_lowercase()),
        })
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    pub fn is_simple(&self) -> bool {
        self.language.is_none() && self.datatype.as_str() == xsd::STRING
    }
}

pub(crate) fn valid_language_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let Some(first) = parts.next() else {
        return false;
    };
    !first.is_empty()
        && first.chars().all(|c| c.is_ascii_alphabetic())
        && parts.all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphanumeric()))
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", escape_string(&self.lexical))?;
        if let Some(lang) = &self.language {
            write!(f, "@{lang}")
        } else if self.datatype.as_str() != xsd::STRING {
            write!(f, "^^{}", self.datatype)
        } else {
            Ok(())
        }
    }
}

/// N-Triples string escaping.
pub fn escape_string(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for c in value.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '\u{08}' => out.push_str("\\b"),
            '\u{0C}' => out.push_str("\\f"),
            c if (c as u32) < 0x20 || c as u32 == 0x7F => {
                out.push_str(&format!("\\u{:04X}", c as u32));
            }
            c => out.push(c),
        }
    }
    out
}

/// Any RDF term. Variant order gives IRI < blank node < literal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term {
    Iri(Iri),
    BlankNode(BlankNode),
    Literal(Literal),
}

impl Term {
    pub fn iri(value: impl Into<String>) -> Result<Self, TermError> {
        Iri::new(value).map(Term::Iri)
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank_node(&self) -> bool {
        matches!(self, Term::BlankNode(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    /// IRI string, blank node label or lexical form.
    pub fn value(&self) -> &str {
        match self {
            Term::Iri(iri) => iri.as_str(),
            Term::BlankNode(b) => b.label(),
            Term::Literal(l) => l.lexical(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(t) => t.fmt(f),
            Term::BlankNode(t) => t.fmt(f),
            Term::Literal(t) => t.fmt(f),
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<BlankNode> for Term {
    fn from(b: BlankNode) -> Self {
        Term::BlankNode(b)
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Literal(l)
    }
}

/// Subject position: IRI or blank node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subject {
    Iri(Iri),
    BlankNode(BlankNode),
}

impl Subject {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Subject::Iri(iri) => Some(iri),
            Subject::BlankNode(_) => None,
        }
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Iri(t) => t.fmt(f),
            Subject::BlankNode(t) => t.fmt(f),
        }
    }
}

impl From<Iri> for Subject {
    fn from(iri: Iri) -> Self {
        Subject::Iri(iri)
    }
}

impl From<BlankNode> for Subject {
    fn from(b: BlankNode) -> Self {
        Subject::BlankNode(b)
    }
}

impl From<Subject> for Term {
    fn from(s: Subject) -> Self {
        match s {
            Subject::Iri(i) => Term::Iri(i),
            Subject::BlankNode(b) => Term::BlankNode(b),
        }
    }
}

impl TryFrom<Term> for Subject {
    type Error = TermError;
    fn try_from(term: Term) -> Result<Self, Self::Error> {
        match term {
            Term::Iri(i) => Ok(Subject::Iri(i)),
            Term::BlankNode(b) => Ok(Subject::BlankNode(b)),
            Term::Literal(l) => Err(TermError::WrongPosition(l.to_string(), "subject")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub subject: Subject,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Subject>, predicate: Iri, object: impl Into<Term>) -> Self {
        Self {
            subject: subject.into(),
            predicate,
            object: object.into(),
        }
    }

    /// Builds a triple from arbitrary terms, checking positions.
    pub fn from_terms(subject: Term, predicate: Term, object: Term) -> Result<Self, TermError> {
        let subject = Subject::try_from(subject)?;
        let predicate = match predicate {
            Term::Iri(i) => i,
            other => return Err(TermError::WrongPosition(other.to_string(), "predicate")),
        };
        Ok(Self {
            subject,
            predicate,
            object,
        })
    }

    pub fn in_graph(self, graph: GraphName) -> Quad {
        Quad {
            subject: self.subject,
            predicate: self.predicate,
            object: self.object,
            graph,
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// The default graph is a real graph name, ordered before every named graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GraphName {
    Default,
    Named(Iri),
}

impl GraphName {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            GraphName::Default => None,
            GraphName::Named(iri) => Some(iri),
        }
    }
}

impl fmt::Display for GraphName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphName::Default => f.write_str("DEFAULT"),
            GraphName::Named(iri) => iri.fmt(f),
        }
    }
}

impl From<Iri> for GraphName {
    fn from(iri: Iri) -> Self {
        GraphName::Named(iri)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quad {
    pub subject: Subject,
    pub predicate: Iri,
    pub object: Term,
    pub graph: GraphName,
}

impl Quad {
    pub fn new(subject: impl Into<Subject>, predicate: Iri, object: impl Into<Term>, graph: GraphName) -> Self {
        Self {
            subject: subject.into(),
            predicate,
            object: object.into(),
            graph,
        }
    }

    pub fn triple(&self) -> Triple {
        Triple {
            subject: self.subject.clone(),
            predicate: self.predicate.clone(),
            object: self.object.clone(),
        }
    }

    pub fn into_triple(self) -> Triple {
        Triple {
            subject: self.subject,
            predicate: self.predicate,
            object: self.object,
        }
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.graph {
            GraphName::Default => write!(f, "{} {} {} .", self.subject, self.predicate, self.object),
            GraphName::Named(g) => {
                write!(f, "{} {} {} {} .", self.subject, self.predicate, self.object, g)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iri_requires_scheme() {
        assert!(Iri::new("http://example.com/a").is_ok());
        assert!(Iri::new("urn:x").is_ok());
        assert_eq!(
            Iri::new("example.com/a:b"),
            Err(TermError::RelativeIri("example.com/a:b".into()))
        );
        assert!(Iri::new("#frag").is_err());
        assert!(Iri::new("").is_err());
        assert!(Iri::new("http://example.com/a b").is_err());
    }

    #[test]
    fn local_name_fallback() {
        let iri = Iri::new("http://example.com/base/grassland_31499").unwrap();
        assert_eq!(iri.local_name(), "grassland_31499");
        let iri = Iri::new("http://www.w3.org/2000/01/rdf-schema#label").unwrap();
        assert_eq!(iri.local_name(), "label");
        let iri = Iri::new("http://example.com/").unwrap();
        assert_eq!(iri.local_name(), "http://example.com/");
    }

    #[test]
    fn lang_literal_invariant() {
        let l = Literal::lang("Publication 1", "EN").unwrap();
        assert_eq!(l.language(), Some("en"));
        assert_eq!(l.datatype().as_str(), rdf::LANG_STRING);
        let lang_dt = Iri::new(rdf::LANG_STRING).unwrap();
        assert_eq!(Literal::typed("x", lang_dt), Err(TermError::LangStringWithoutTag));
        assert!(Literal::lang("x", "").is_err());
        assert!(Literal::lang("x", "en-").is_err());
    }

    #[test]
    fn blank_node_label() {
        assert!(BlankNode::new("b0").is_ok());
        assert!(BlankNode::new("").is_err());
        assert!(BlankNode::new("a b").is_err());
    }

    #[test]
    fn term_kind_order() {
        let iri = Term::iri("http://z").unwrap();
        let bnode = Term::BlankNode(BlankNode::new("a").unwrap());
        let lit = Term::Literal(Literal::simple("a"));
        assert!(iri < bnode && bnode < lit);
    }

    #[test]
    fn literal_display_escapes() {
        let l = Literal::simple("say \"hi\"\n");
        assert_eq!(l.to_string(), r#""say \"hi\"\n""#);
    }
}
