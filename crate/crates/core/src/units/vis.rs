use std::collections::BTreeMap;

use serde::Serialize;

use super::construct_view;
use crate::rdf::vocab::rdfs;
use crate::rdf::{Dataset, Iri, Literal, Term};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VisNode {
    pub id: String,
    pub label: String,
    /// `iri`, `bnode` or `literal`.
    pub kind: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VisEdge {
    pub source: String,
    pub predicate: String,
    pub target: String,
    pub label: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VisGraph {
    pub nodes: Vec<VisNode>,
    pub edges: Vec<VisEdge>,
}

/// Node-link view of a unit graph with labels resolved over the whole dataset.
pub fn vis_graph(dataset: &Dataset, unit: &Iri) -> VisGraph {
    let mut nodes: BTreeMap<String, VisNode> = BTreeMap::new();
    let mut edges = Vec::new();
    for t in construct_view(dataset, unit) {
        let source = node_for(dataset, &t.subject.clone().into());
        let target = node_for(dataset, &t.object);
        edges.push(VisEdge {
            source: source.id.clone(),
            predicate: t.predicate.as_str().to_string(),
            target: target.id.clone(),
            label: label_of(dataset, &t.predicate),
        });
        nodes.entry(source.id.clone()).or_insert(source);
        nodes.entry(target.id.clone()).or_insert(target);
    }
    VisGraph {
        nodes: nodes.into_values().collect(),
        edges,
    }
}

fn node_for(dataset: &Dataset, term: &Term) -> VisNode {
    match term {
        Term::Iri(i) => VisNode {
            id: i.as_str().to_string(),
            label: label_of(dataset, i),
            kind: "iri",
        },
        Term::BlankNode(b) => VisNode {
            id: format!("_:{}", b.label()),
            label: format!("_:{}", b.label()),
            kind: "bnode",
        },
        Term::Literal(l) => VisNode {
            id: literal_key(l),
            label: l.lexical().to_string(),
            kind: "literal",
        },
    }
}

/// Smallest English `rdfs:label` anywhere in the dataset, else the local name.
fn label_of(dataset: &Dataset, iri: &Iri) -> String {
    let label = Iri::new_unchecked(rdfs::LABEL);
    dataset
        .quads_matching(Some(&Term::Iri(iri.clone())), Some(&label), None, None)
        .filter_map(|q| match q.object {
            Term::Literal(l) if is_english(l.language()) => Some(l.lexical().to_string()),
            _ => None,
        })
        .min()
        .unwrap_or_else(|| iri.local_name().to_string())
}

fn is_english(lang: Option<&str>) -> bool {
    matches!(lang, Some(l) if l == "en" || l.starts_with("en-"))
}

/// `lit:` plus a 64-bit FNV-1a hash of lexical form, datatype and language;
/// identical across runs and platforms.
fn literal_key(l: &Literal) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let parts = [l.lexical(), l.datatype().as_str(), l.language().unwrap_or("")];
    for (i, part) in parts.iter().enumerate() {
        if i > 0 {
            // separator keeps ("ab","c") apart from ("a","bc")
            h ^= 0xff;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        for b in part.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    format!("lit:{h:016x}")
}
