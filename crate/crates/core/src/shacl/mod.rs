//! A SHACL subset: node shapes with a target class, property constraints on
//! single-predicate paths, and SPARQL-based constraints over `$this`.

mod regex;
mod validate;

pub use regex::Pattern;
pub use validate::{validate, ConstraintKind, ValidationReport, Violation};

use std::collections::{BTreeMap, BTreeSet};

use crate::rdf::vocab::rdf;
use crate::rdf::{Dataset, Iri, Term};
use crate::sparql::{parse_query_with_prefixes, Query, QueryError};
use crate::syntax::{parse_turtle, read_list, PrefixTable, SyntaxError};

pub const SH: &str = "http://www.w3.org/ns/shacl#";

/// Deepest chain of `sh:node` references a shape set may contain.
pub const MAX_NODE_DEPTH: usize = 8;

#[derive(Debug, thiserror::Error)]
pub enum ShaclError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("unsupported SHACL feature: {0}")]
    UnsupportedShacl(String),
    #[error("node shape {0} has no sh:targetClass")]
    MissingTarget(String),
    #[error("invalid shape {shape}: {message}")]
    Invalid { shape: String, message: String },
    #[error("sh:select in {shape}: {source}")]
    Query {
        shape: String,
        #[source]
        source: QueryError,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Iri,
    Literal,
    BlankNode,
}

impl NodeKind {
    pub fn matches(self, term: &Term) -> bool {
        match self {
            NodeKind::Iri => term.is_iri(),
            NodeKind::Literal => term.is_literal(),
            NodeKind::BlankNode => term.is_blank_node(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SparqlConstraint {
    pub message: Option<String>,
    pub select_text: String,
    pub query: Query,
}

#[derive(Debug, Clone, Default)]
pub struct PropertyConstraint {
    pub path: Option<Iri>,
    pub min_count: Option<usize>,
    pub max_count: Option<usize>,
    pub datatype: Option<Iri>,
    pub node_kind: Option<NodeKind>,
    pub pattern: Option<Pattern>,
    pub language_in: Option<Vec<String>>,
    pub unique_lang: bool,
    pub node_shape: Option<Iri>,
    pub message: Option<String>,
    /// SPARQL constraints nested in the property shape; `$this` is still
    /// the focus node of the enclosing node shape.
    pub sparql: Vec<SparqlConstraint>,
}

impl PropertyConstraint {
    pub fn path(&self) -> &Iri {
        self.path
            .as_ref()
            .expect("parsed property constraints always have a path")
    }

    /// Own message, else the message of a single nested SPARQL constraint.
    pub fn effective_message(&self) -> Option<&str> {
        self.message.as_deref().or(match self.sparql.as_slice() {
            [only] => only.message.as_deref(),
            _ => None,
        })
    }
}

#[derive(Debug, Clone)]
pub enum Constraint {
    Property(PropertyConstraint),
    Sparql(SparqlConstraint),
}

#[derive(Debug, Clone)]
pub struct NodeShape {
    pub iri: Iri,
    pub target_class: Iri,
    /// In document order.
    pub constraints: Vec<Constraint>,
}

fn sh(local: &str) -> Iri {
    Iri::new_unchecked(format!("{SH}{local}"))
}

struct Reader<'a> {
    data: &'a Dataset,
    prefixes: &'a PrefixTable,
}

impl Reader<'_> {
    fn objects(&self, node: &Term, local: &str) -> Vec<Term> {
        let mut v: Vec<Term> = self
            .data
            .quads_matching(Some(node), Some(&sh(local)), None, None)
            .map(|q| q.object)
            .collect();
        v.sort_by_key(blank_ordinal);
        v.dedup();
        v
    }

    fn one(&self, node: &Term, local: &str, shape: &str) -> Result<Option<Term>, ShaclError> {
        let mut v = self.objects(node, local);
        match v.len() {
            0 => Ok(None),
            1 => Ok(v.pop()),
            _ => Err(invalid(shape, format!("more than one sh:{local}"))),
        }
    }

    fn iri(&self, node: &Term, local: &str, shape: &str) -> Result<Option<Iri>, ShaclError> {
        match self.one(node, local, shape)? {
            None => Ok(None),
            Some(Term::Iri(i)) => Ok(Some(i)),
            Some(other) => Err(invalid(shape, format!("sh:{local} must be an IRI, got {other}"))),
        }
    }

    fn string(&self, node: &Term, local: &str, shape: &str) -> Result<Option<String>, ShaclError> {
        match self.one(node, local, shape)? {
            None => Ok(None),
            Some(Term::Literal(l)) => Ok(Some(l.lexical().to_string())),
            Some(other) => Err(invalid(shape, format!("sh:{local} must be a literal, got {other}"))),
        }
    }

    fn count(&self, node: &Term, local: &str, shape: &str) -> Result<Option<usize>, ShaclError> {
        match self.string(node, local, shape)? {
            None => Ok(None),
            Some(s) => s
                .parse()
                .map(Some)
                .map_err(|_| invalid(shape, format!("sh:{local} must be a non-negative integer, got '{s}'"))),
        }
    }

    /// Rejects any `sh:` property outside `allowed` on `node`.
    fn only(&self, node: &Term, allowed: &[&str]) -> Result<(), ShaclError> {
        let mut seen = BTreeSet::new();
        for q in self.data.quads_matching(Some(node), None, None, None) {
            if let Some(local) = q.predicate.as_str().strip_prefix(SH) {
                if !allowed.contains(&local) {
                    seen.insert(local.to_string());
                }
            }
        }
        match seen.into_iter().next() {
            Some(local) => Err(ShaclError::UnsupportedShacl(format!("sh:{local}"))),
            None => Ok(()),
        }
    }

    fn sparql(&self, node: &Term, shape: &str) -> Result<SparqlConstraint, ShaclError> {
        self.only(node, &["message", "select"])?;
        let select_text = self
            .string(node, "select", shape)?
            .ok_or_else(|| invalid(shape, "sh:sparql without sh:select".into()))?;
        let query = parse_query_with_prefixes(&select_text, self.prefixes).map_err(|source| ShaclError::Query {
            shape: shape.to_string(),
            source,
        })?;
        if query.is_construct() {
            return Err(invalid(shape, "sh:select must be a SELECT query".into()));
        }
        Ok(SparqlConstraint {
            message: self.string(node, "message", shape)?,
            select_text,
            query,
        })
    }

    fn property(&self, node: &Term, shape: &str) -> Result<PropertyConstraint, ShaclError> {
        self.only(
            node,
            &[
                "path",
                "minCount",
                "maxCount",
                "datatype",
                "nodeKind",
                "pattern",
                "languageIn",
                "uniqueLang",
                "node",
                "message",
                "sparql",
            ],
        )?;
        let path = match self.one(node, "path", shape)? {
            Some(Term::Iri(i)) => i,
            Some(_) => {
                return Err(ShaclError::UnsupportedShacl(
                    "sh:path other than a single predicate".into(),
                ))
            }
            None => return Err(invalid(shape, "sh:property without sh:path".into())),
        };
        let node_kind = match self.iri(node, "nodeKind", shape)? {
            None => None,
            Some(k) => Some(match k.as_str().strip_prefix(SH) {
                Some("IRI") => NodeKind::Iri,
                Some("Literal") => NodeKind::Literal,
                Some("BlankNode") => NodeKind::BlankNode,
                _ => return Err(ShaclError::UnsupportedShacl(format!("sh:nodeKind {k}"))),
            }),
        };
        let pattern = match self.string(node, "pattern", shape)? {
            None => None,
            Some(p) => {
                Some(Pattern::compile(&p).map_err(|e| ShaclError::UnsupportedShacl(format!("sh:pattern '{p}': {e}")))?)
            }
        };
        let language_in = match self.one(node, "languageIn", shape)? {
            None => None,
            Some(head) => {
                let items = read_list(self.data, &head)
                    .ok_or_else(|| invalid(shape, "sh:languageIn is not a well-formed list".into()))?;
                let mut tags = Vec::new();
                for item in items {
                    match item {
                        Term::Literal(l) => tags.push(l.lexical().to_string()),
                        other => return Err(invalid(shape, format!("sh:languageIn member {other} is not a literal"))),
                    }
                }
                Some(tags)
            }
        };
        let unique_lang = match self.string(node, "uniqueLang", shape)?.as_deref() {
            None | Some("false") => false,
            Some("true") => true,
            Some(other) => {
                return Err(invalid(
                    shape,
                    format!("sh:uniqueLang must be a boolean, got '{other}'"),
                ))
            }
        };
        let mut sparql = Vec::new();
        for s in self.objects(node, "sparql") {
            sparql.push(self.sparql(&s, shape)?);
        }
        Ok(PropertyConstraint {
            path: Some(path),
            min_count: self.count(node, "minCount", shape)?,
            max_count: self.count(node, "maxCount", shape)?,
            datatype: self.iri(node, "datatype", shape)?,
            node_kind,
            pattern,
            language_in,
            unique_lang,
            node_shape: self.iri(node, "node", shape)?,
            message: self.string(node, "message", shape)?,
            sparql,
        })
    }

    fn node_shape(&self, node: &Term) -> Result<NodeShape, ShaclError> {
        let iri = match node {
            Term::Iri(i) => i.clone(),
            other => return Err(ShaclError::UnsupportedShacl(format!("anonymous node shape {other}"))),
        };
        let name = iri.as_str().to_string();
        self.only(node, &["targetClass", "property", "sparql"])?;
        let target_class = self
            .iri(node, "targetClass", &name)?
            .ok_or_else(|| ShaclError::MissingTarget(name.clone()))?;
        // blank node labels are allocation-ordered, so this is document order
        let mut items: Vec<(Term, bool)> = self
            .objects(node, "sparql")
            .into_iter()
            .map(|t| (t, true))
            .chain(self.objects(node, "property").into_iter().map(|t| (t, false)))
            .collect();
        items.sort_by_key(|(t, _)| blank_ordinal(t));
        let mut constraints = Vec::new();
        for (t, is_sparql) in items {
            constraints.push(if is_sparql {
                Constraint::Sparql(self.sparql(&t, &name)?)
            } else {
                Constraint::Property(self.property(&t, &name)?)
            });
        }
        Ok(NodeShape {
            iri,
            target_class,
            constraints,
        })
    }
}

fn invalid(shape: &str, message: String) -> ShaclError {
    ShaclError::Invalid {
        shape: shape.to_string(),
        message,
    }
}

fn blank_ordinal(t: &Term) -> (u64, String) {
    match t {
        Term::BlankNode(b) => (
            b.label().trim_start_matches('b').parse().unwrap_or(u64::MAX),
            String::new(),
        ),
        other => (u64::MAX, other.to_string()),
    }
}

/// Parses the node shapes of a Turtle document, sorted by IRI. A node is a
/// shape if it is typed `sh:NodeShape` or carries `sh:targetClass`.
pub fn parse_shapes(text: &str) -> Result<Vec<NodeShape>, ShaclError> {
    let (data, prefixes) = parse_turtle(text)?;
    let reader = Reader {
        data: &data,
        prefixes: &prefixes,
    };
    let rdf_type = Iri::new_unchecked(rdf::TYPE);
    let mut nodes: BTreeSet<Term> = data
        .quads_matching(None, Some(&rdf_type), Some(&Term::Iri(sh("NodeShape"))), None)
        .map(|q| q.subject.into())
        .collect();
    nodes.extend(
        data.quads_matching(None, Some(&sh("targetClass")), None, None)
            .map(|q| Term::from(q.subject)),
    );
    for q in data.quads_matching(None, Some(&rdf_type), None, None) {
        if let Some(local) = q.object.as_iri().and_then(|i| i.as_str().strip_prefix(SH)) {
            if local != "NodeShape" {
                return Err(ShaclError::UnsupportedShacl(format!("sh:{local}")));
            }
        }
    }
    let mut shapes = Vec::new();
    for n in &nodes {
        shapes.push(reader.node_shape(n)?);
    }
    check_references(&shapes)?;
    Ok(shapes)
}

/// Every `sh:node` must name a parsed shape, reference chains must be
/// acyclic, and no chain may exceed [`MAX_NODE_DEPTH`].
fn check_references(shapes: &[NodeShape]) -> Result<(), ShaclError> {
    let edges: BTreeMap<&Iri, Vec<&Iri>> = shapes
        .iter()
        .map(|s| {
            let refs = s
                .constraints
                .iter()
                .filter_map(|c| match c {
                    Constraint::Property(p) => p.node_shape.as_ref(),
                    Constraint::Sparql(_) => None,
                })
                .collect();
            (&s.iri, refs)
        })
        .collect();
    for (shape, refs) in &edges {
        for r in refs {
            if !edges.contains_key(r) {
                return Err(invalid(shape.as_str(), format!("sh:node refers to unknown shape {r}")));
            }
        }
    }
    // longest chain from each shape; a revisit on the current path is a cycle
    fn depth<'a>(
        at: &'a Iri,
        edges: &BTreeMap<&'a Iri, Vec<&'a Iri>>,
        path: &mut Vec<&'a Iri>,
        memo: &mut BTreeMap<&'a Iri, usize>,
    ) -> Result<usize, ShaclError> {
        if let Some(d) = memo.get(at) {
            return Ok(*d);
        }
        if path.contains(&at) {
            return Err(ShaclError::UnsupportedShacl(format!("recursive sh:node through {at}")));
        }
        path.push(at);
        let mut d = 0;
        for next in &edges[at] {
            d = d.max(1 + depth(next, edges, path, memo)?);
        }
        path.pop();
        memo.insert(at, d);
        Ok(d)
    }
    let mut memo = BTreeMap::new();
    for shape in edges.keys() {
        if depth(shape, &edges, &mut Vec::new(), &mut memo)? > MAX_NODE_DEPTH {
            return Err(ShaclError::UnsupportedShacl(format!(
                "sh:node chain from {shape} deeper than {MAX_NODE_DEPTH}"
            )));
        }
    }
    Ok(())
}
