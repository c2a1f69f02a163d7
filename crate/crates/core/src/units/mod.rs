//! Semantic units: named subgraphs whose graph name is the unit IRI.
//!
//! A unit graph holds the unit's `rdf:type` quads, exactly one subject
//! quad, its data triples and, for compounds, association quads whose
//! subject is the compound's subject resource.

mod vis;
pub mod vocab;

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;
use serde_json::Value;

use crate::rdf::vocab::rdf;
use crate::rdf::{Dataset, GraphName, Iri, Quad, Subject, Term, Triple};
use crate::sparql::term_to_json;

pub use vis::{vis_graph, VisEdge, VisGraph, VisNode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UnitError {
    #[error("invalid IRI part '{0}'")]
    InvalidLocalPart(String),
    #[error("unit invariant violated: {0}")]
    InvariantViolation(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitKind {
    NamedIndividualIdentification,
    Statement(Iri),
    Compound(Iri),
}

impl UnitKind {
    /// Class IRIs a unit of this kind is typed with.
    pub fn classes(&self) -> Vec<Iri> {
        match self {
            UnitKind::NamedIndividualIdentification => {
                vec![Iri::new_unchecked(vocab::NAMED_INDIVIDUAL_IDENTIFICATION_UNIT)]
            }
            UnitKind::Statement(c) => vec![Iri::new_unchecked(vocab::STATEMENT_UNIT), c.clone()],
            UnitKind::Compound(c) => vec![Iri::new_unchecked(vocab::COMPOUND_UNIT), c.clone()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticUnit {
    pub iri: Iri,
    pub kinds: Vec<Iri>,
    pub subject: Iri,
    pub data_triples: Vec<Triple>,
    pub associations: Vec<Iri>,
}

impl SemanticUnit {
    pub fn new(kind: UnitKind, iri: Iri, subject: Iri) -> Self {
        Self {
            iri,
            kinds: kind.classes(),
            subject,
            data_triples: Vec::new(),
            associations: Vec::new(),
        }
    }

    pub fn with_triple(mut self, t: Triple) -> Self {
        self.data_triples.push(t);
        self
    }

    pub fn with_association(mut self, member: Iri) -> Self {
        self.associations.push(member);
        self
    }

    pub fn is_compound(&self) -> bool {
        self.kinds.iter().any(|k| k.as_str() == vocab::COMPOUND_UNIT)
    }

    /// Copies data triples of member units into this compound, as chosen
    /// by `selectors`. Nothing is copied implicitly.
    pub fn deep_include(&mut self, dataset: &Dataset, selectors: &[DeepInclude]) {
        for sel in selectors {
            let (member, predicate) = match sel {
                DeepInclude::Member(m) => (m, None),
                DeepInclude::Predicate { member, predicate } => (member, Some(predicate)),
            };
            for t in data_triples(dataset, member) {
                if predicate.is_none_or(|p| *p == t.predicate) && !self.data_triples.contains(&t) {
                    self.data_triples.push(t);
                }
            }
        }
    }
}

/// Chooses member triples to copy into a compound unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeepInclude {
    /// Every data triple of the member unit.
    Member(Iri),
    /// The member's data triples with one predicate.
    Predicate { member: Iri, predicate: Iri },
}

fn check_part(part: &str) -> Result<(), UnitError> {
    let bad = part.is_empty()
        || part
            .chars()
            .any(|c| c.is_whitespace() || c.is_control() || "<>\"{}|\\^`/?#".contains(c));
    if bad {
        Err(UnitError::InvalidLocalPart(part.to_string()))
    } else {
        Ok(())
    }
}

/// `http://example.com/base/semunit/{kind_segment}/{subject_local}`.
pub fn mint_unit_iri(kind_segment: &str, subject_local: &str) -> Result<Iri, UnitError> {
    check_part(kind_segment)?;
    check_part(subject_local)?;
    Iri::new(format!("{}{kind_segment}/{subject_local}", vocab::UNIT_IRI_NS))
        .map_err(|_| UnitError::InvalidLocalPart(format!("{kind_segment}/{subject_local}")))
}

/// Writes the unit into its own graph. Returns the number of new quads.
pub fn materialize(unit: &SemanticUnit, dataset: &mut Dataset) -> Result<usize, UnitError> {
    if unit.kinds.is_empty() {
        return Err(UnitError::InvariantViolation(format!("unit {} has no class", unit.iri)));
    }
    if !unit.associations.is_empty() && !unit.is_compound() {
        return Err(UnitError::InvariantViolation(format!(
            "unit {} has associations but is not a compound unit",
            unit.iri
        )));
    }
    let graph = GraphName::Named(unit.iri.clone());
    let rdf_type = Iri::new_unchecked(rdf::TYPE);
    let mut quads = Vec::new();
    for k in &unit.kinds {
        quads.push(Quad::new(unit.iri.clone(), rdf_type.clone(), k.clone(), graph.clone()));
    }
    quads.push(Quad::new(
        unit.iri.clone(),
        Iri::new_unchecked(vocab::PROP_SUBJECT),
        unit.subject.clone(),
        graph.clone(),
    ));
    for t in &unit.data_triples {
        quads.push(t.clone().in_graph(graph.clone()));
    }
    for m in &unit.associations {
        quads.push(Quad::new(
            unit.subject.clone(),
            Iri::new_unchecked(vocab::PROP_ASSOC),
            m.clone(),
            graph.clone(),
        ));
    }
    Ok(quads.into_iter().filter(|q| dataset.insert(q.clone())).count())
}

/// Every quad of the unit's graph, sorted.
pub fn extract(dataset: &Dataset, unit: &Iri) -> Vec<Quad> {
    let mut out: Vec<Quad> = dataset
        .quads_matching(None, None, None, Some(&GraphName::Named(unit.clone())))
        .collect();
    out.sort();
    out
}

/// Association targets inside a compound's graph, deduplicated and sorted.
pub fn associations(dataset: &Dataset, compound: &Iri) -> Vec<Iri> {
    let assoc = Iri::new_unchecked(vocab::PROP_ASSOC);
    let set: BTreeSet<Iri> = dataset
        .quads_matching(None, Some(&assoc), None, Some(&GraphName::Named(compound.clone())))
        .filter_map(|q| q.object.as_iri().cloned())
        .collect();
    set.into_iter().collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SubjectUnits {
    /// Units whose subject is the resource.
    pub direct: Vec<Iri>,
    /// Compound units reaching a direct unit over one or more associations.
    pub parents: Vec<Iri>,
}

pub fn units_for_subject(dataset: &Dataset, resource: &Iri) -> SubjectUnits {
    let prop_subject = Iri::new_unchecked(vocab::PROP_SUBJECT);
    let direct: BTreeSet<Iri> = dataset
        .quads_matching(None, Some(&prop_subject), Some(&Term::Iri(resource.clone())), None)
        .filter_map(|q| q.subject.as_iri().cloned())
        .collect();

    let assoc = Iri::new_unchecked(vocab::PROP_ASSOC);
    let mut parents = BTreeSet::new();
    let mut queue: VecDeque<Iri> = direct.iter().cloned().collect();
    let mut seen: HashSet<Iri> = HashSet::new();
    while let Some(member) = queue.pop_front() {
        for q in dataset.quads_matching(None, Some(&assoc), Some(&Term::Iri(member)), None) {
            if let GraphName::Named(compound) = q.graph {
                if seen.insert(compound.clone()) {
                    parents.insert(compound.clone());
                    queue.push_back(compound);
                }
            }
        }
    }
    SubjectUnits {
        direct: direct.into_iter().collect(),
        parents: parents.into_iter().collect(),
    }
}

/// The unit's triples without their graph component, sorted.
pub fn construct_view(dataset: &Dataset, unit: &Iri) -> Vec<Triple> {
    let set: BTreeSet<Triple> = extract(dataset, unit).into_iter().map(Quad::into_triple).collect();
    set.into_iter().collect()
}

fn is_annotation(t: &Triple, unit: &Iri) -> bool {
    let p = t.predicate.as_str();
    p == vocab::PROP_ASSOC || (t.subject.as_iri() == Some(unit) && (p == rdf::TYPE || p == vocab::PROP_SUBJECT))
}

/// Unit graph triples other than typing, subject and association quads.
pub fn data_triples(dataset: &Dataset, unit: &Iri) -> Vec<Triple> {
    construct_view(dataset, unit)
        .into_iter()
        .filter(|t| !is_annotation(t, unit))
        .collect()
}

/// Reassembles a unit from its graph; `None` if the graph has no subject quad.
pub fn read_unit(dataset: &Dataset, iri: &Iri) -> Option<SemanticUnit> {
    let triples = construct_view(dataset, iri);
    let unit_subject = Subject::Iri(iri.clone());
    let subject = triples
        .iter()
        .find(|t| t.subject == unit_subject && t.predicate.as_str() == vocab::PROP_SUBJECT)
        .and_then(|t| t.object.as_iri().cloned())?;
    let kinds = triples
        .iter()
        .filter(|t| t.subject == unit_subject && t.predicate.as_str() == rdf::TYPE)
        .filter_map(|t| t.object.as_iri().cloned())
        .collect();
    Some(SemanticUnit {
        iri: iri.clone(),
        kinds,
        subject,
        data_triples: triples.iter().filter(|t| !is_annotation(t, iri)).cloned().collect(),
        associations: associations(dataset, iri),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitSummary {
    pub iri: String,
    pub types: Vec<String>,
    pub subject: String,
}

/// Every graph that carries a subject quad for its own name, sorted by IRI.
pub fn list_units(dataset: &Dataset) -> Vec<UnitSummary> {
    let prop_subject = Iri::new_unchecked(vocab::PROP_SUBJECT);
    let mut out: Vec<UnitSummary> = dataset
        .quads_matching(None, Some(&prop_subject), None, None)
        .filter(|q| matches!(&q.graph, GraphName::Named(g) if q.subject.as_iri() == Some(g)))
        .filter_map(|q| {
            let iri = q.subject.as_iri()?.clone();
            let subject = q.object.as_iri()?.as_str().to_string();
            let types = dataset
                .quads_matching(
                    Some(&Term::Iri(iri.clone())),
                    Some(&Iri::new_unchecked(rdf::TYPE)),
                    None,
                    Some(&q.graph),
                )
                .filter_map(|t| t.object.as_iri().map(|i| i.as_str().to_string()))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            Some(UnitSummary {
                iri: iri.into_string(),
                types,
                subject,
            })
        })
        .collect();
    out.sort_by(|a, b| a.iri.cmp(&b.iri));
    out.dedup_by(|a, b| a.iri == b.iri);
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TripleJson {
    pub subject: Value,
    pub predicate: Value,
    pub object: Value,
}

impl From<&Triple> for TripleJson {
    fn from(t: &Triple) -> Self {
        Self {
            subject: term_to_json(&t.subject.clone().into()),
            predicate: term_to_json(&Term::Iri(t.predicate.clone())),
            object: term_to_json(&t.object),
        }
    }
}

/// Unit detail document: `{iri, types[], subject, associations[], triples[]}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitDetail {
    pub iri: String,
    pub types: Vec<String>,
    pub subject: String,
    pub associations: Vec<String>,
    pub triples: Vec<TripleJson>,
}

pub fn unit_detail(dataset: &Dataset, iri: &Iri) -> Option<UnitDetail> {
    let u = read_unit(dataset, iri)?;
    let mut types: Vec<String> = u.kinds.iter().map(|k| k.as_str().to_string()).collect();
    types.sort();
    Some(UnitDetail {
        iri: u.iri.into_string(),
        types,
        subject: u.subject.into_string(),
        associations: u.associations.into_iter().map(Iri::into_string).collect(),
        triples: u.data_triples.iter().map(TripleJson::from).collect(),
    })
}
