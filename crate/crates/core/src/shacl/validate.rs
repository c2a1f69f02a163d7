use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use super::*;
use crate::sparql::{evaluate_with_bindings, term_to_json, QueryResult, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintKind {
    MinCount,
    MaxCount,
    Datatype,
    NodeKind,
    Pattern,
    LanguageIn,
    UniqueLang,
    Node,
    Sparql,
}

impl ConstraintKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstraintKind::MinCount => "minCount",
            ConstraintKind::MaxCount => "maxCount",
            ConstraintKind::Datatype => "datatype",
            ConstraintKind::NodeKind => "nodeKind",
            ConstraintKind::Pattern => "pattern",
            ConstraintKind::LanguageIn => "languageIn",
            ConstraintKind::UniqueLang => "uniqueLang",
            ConstraintKind::Node => "node",
            ConstraintKind::Sparql => "sparql",
        }
    }
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub focus: Term,
    pub shape: Iri,
    pub path: Option<Iri>,
    pub kind: ConstraintKind,
    pub value: Option<Term>,
    pub message: String,
}

impl Violation {
    pub fn to_json(&self) -> Value {
        json!({
            "focus": self.focus.value(),
            "shape": self.shape.as_str(),
            "path": self.path.as_ref().map(Iri::as_str),
            "constraint": self.kind.as_str(),
            "message": self.message,
            "value": self.value.as_ref().map(term_to_json),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub conforms: bool,
    /// Sorted by focus node, then shape, path and constraint.
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort();
        Self {
            conforms: violations.is_empty(),
            violations,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "conforms": self.conforms,
            "violations": self.violations.iter().map(Violation::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("conforms: {}\nviolations: {}\n", self.conforms, self.violations.len());
        for v in &self.violations {
            out.push_str(&format!("{} [{} {}", v.focus, v.shape, v.kind));
            if let Some(p) = &v.path {
                out.push_str(&format!(" {p}"));
            }
            out.push(']');
            if let Some(val) = &v.value {
                out.push_str(&format!(" value {val}"));
            }
            out.push_str(&format!(": {}\n", v.message));
        }
        out
    }
}

/// Focus nodes of `shape`: subjects typed with its target class in any graph.
fn focus_nodes(dataset: &Dataset, shape: &NodeShape) -> BTreeSet<Term> {
    dataset
        .quads_matching(
            None,
            Some(&Iri::new_unchecked(rdf::TYPE)),
            Some(&Term::Iri(shape.target_class.clone())),
            None,
        )
        .map(|q| q.subject.into())
        .collect()
}

/// Checks every shape against its focus nodes. `sh:node` values that are
/// themselves focus nodes of the referenced shape are not re-checked, so a
/// defect is reported once, on the node that carries it.
pub fn validate(dataset: &Dataset, shapes: &[NodeShape]) -> ValidationReport {
    let v = Validator {
        dataset,
        shapes: shapes.iter().map(|s| (&s.iri, s)).collect(),
    };
    let mut out = Vec::new();
    for shape in shapes {
        for focus in focus_nodes(dataset, shape) {
            out.extend(v.check(shape, &focus, 0));
        }
    }
    ValidationReport::from_violations(out)
}

struct Validator<'a> {
    dataset: &'a Dataset,
    shapes: BTreeMap<&'a Iri, &'a NodeShape>,
}

impl Validator<'_> {
    fn check(&self, shape: &NodeShape, focus: &Term, depth: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        for c in &shape.constraints {
            match c {
                Constraint::Sparql(s) => self.sparql(shape, None, s, s.message.as_deref(), focus, &mut out),
                Constraint::Property(p) => self.property(shape, p, focus, depth, &mut out),
            }
        }
        out
    }

    fn sparql(
        &self,
        shape: &NodeShape,
        path: Option<&Iri>,
        c: &SparqlConstraint,
        message: Option<&str>,
        focus: &Term,
        out: &mut Vec<Violation>,
    ) {
        let bindings = [(Variable::new("this"), focus.clone())];
        let violation = |message: String| Violation {
            focus: focus.clone(),
            shape: shape.iri.clone(),
            path: path.cloned(),
            kind: ConstraintKind::Sparql,
            value: None,
            message,
        };
        let default = || format!("SPARQL constraint of {} returned a result", shape.iri);
        match evaluate_with_bindings(self.dataset, &c.query, &bindings) {
            Ok(QueryResult::Solutions(s)) => {
                for _ in 0..s.len() {
                    out.push(violation(message.map(str::to_string).unwrap_or_else(default)));
                }
            }
            Ok(QueryResult::Triples(_)) => {}
            Err(e) => out.push(violation(format!("SPARQL constraint failed to evaluate: {e}"))),
        }
    }

    fn property(
        &self,
        shape: &NodeShape,
        p: &PropertyConstraint,
        focus: &Term,
        depth: usize,
        out: &mut Vec<Violation>,
    ) {
        let path = p.path();
        let values: BTreeSet<Term> = self
            .dataset
            .quads_matching(Some(focus), Some(path), None, None)
            .map(|q| q.object)
            .collect();
        let message = p.effective_message();
        let mut push = |kind: ConstraintKind, value: Option<&Term>, default: String| {
            out.push(Violation {
                focus: focus.clone(),
                shape: shape.iri.clone(),
                path: Some(path.clone()),
                kind,
                value: value.cloned(),
                message: message.map(str::to_string).unwrap_or(default),
            })
        };
        if let Some(min) = p.min_count {
            if values.len() < min {
                push(
                    ConstraintKind::MinCount,
                    None,
                    format!("fewer than {min} values for {path}"),
                );
            }
        }
        if let Some(max) = p.max_count {
            if values.len() > max {
                push(
                    ConstraintKind::MaxCount,
                    None,
                    format!("more than {max} values for {path}"),
                );
            }
        }
        for v in &values {
            if let Some(dt) = &p.datatype {
                if v.as_literal().map(|l| l.datatype()) != Some(dt) {
                    push(
                        ConstraintKind::Datatype,
                        Some(v),
                        format!("value is not of datatype {dt}"),
                    );
                }
            }
            if let Some(kind) = p.node_kind {
                if !kind.matches(v) {
                    push(
                        ConstraintKind::NodeKind,
                        Some(v),
                        format!("value is not of node kind {kind:?}"),
                    );
                }
            }
            if let Some(re) = &p.pattern {
                let ok = match v {
                    Term::BlankNode(_) => false,
                    other => re.is_match(other.value()),
                };
                if !ok {
                    push(
                        ConstraintKind::Pattern,
                        Some(v),
                        format!("value does not match '{}'", re.as_str()),
                    );
                }
            }
            if let Some(tags) = &p.language_in {
                let ok = v
                    .as_literal()
                    .and_then(|l| l.language())
                    .is_some_and(|lang| tags.iter().any(|t| lang_matches(lang, t)));
                if !ok {
                    push(
                        ConstraintKind::LanguageIn,
                        Some(v),
                        format!("language tag not in {tags:?}"),
                    );
                }
            }
            if let Some(target) = &p.node_shape {
                if let Some(ref_shape) = self.shapes.get(target) {
                    if !self.is_focus_of(v, ref_shape)
                        && depth < MAX_NODE_DEPTH
                        && !self.check(ref_shape, v, depth + 1).is_empty()
                    {
                        push(
                            ConstraintKind::Node,
                            Some(v),
                            format!("value does not conform to {target}"),
                        );
                    }
                }
            }
        }
        if p.unique_lang {
            let mut by_lang: BTreeMap<String, usize> = BTreeMap::new();
            for v in &values {
                if let Some(lang) = v.as_literal().and_then(|l| l.language()) {
                    *by_lang.entry(lang.to_ascii_lowercase()).or_default() += 1;
                }
            }
            for (lang, n) in by_lang {
                if n > 1 {
                    push(
                        ConstraintKind::UniqueLang,
                        None,
                        format!("{n} values share language tag '{lang}'"),
                    );
                }
            }
        }
        for s in &p.sparql {
            self.sparql(shape, Some(path), s, s.message.as_deref().or(message), focus, out);
        }
    }

    fn is_focus_of(&self, term: &Term, shape: &NodeShape) -> bool {
        let Ok(subject) = crate::rdf::Subject::try_from(term.clone()) else {
            return false;
        };
        let ty = Iri::new_unchecked(rdf::TYPE);
        let class = Term::Iri(shape.target_class.clone());
        self.dataset
            .quads_matching(Some(&Term::from(subject)), Some(&ty), Some(&class), None)
            .next()
            .is_some()
    }
}

/// Basic language-range matching: the range equals the tag or is a prefix
/// of it ending at a subtag boundary, case-insensitively.
fn lang_matches(tag: &str, range: &str) -> bool {
    let (tag, range) = (tag.to_ascii_lowercase(), range.to_ascii_lowercase());
    range == "*" || tag == range || tag.strip_prefix(&range).is_some_and(|rest| rest.starts_with('-'))
}
