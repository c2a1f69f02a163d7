use std::collections::BTreeSet;

use super::template::{Template, TermType};
use super::*;
use crate::rdf::vocab::rdf;
use crate::rdf::{Dataset, Term};
use crate::syntax::parse_turtle_with_base;

const RR: &str = "http://www.w3.org/ns/r2rml#";

/// Base IRI for relative references such as `<#Publication_id>`.
pub const MAPPING_BASE: &str = "http://example.com/base/mapping";

fn rr(local: &str) -> Iri {
    Iri::new_unchecked(format!("{RR}{local}"))
}

struct Reader<'a> {
    data: &'a Dataset,
    prefixes: &'a PrefixTable,
}

impl Reader<'_> {
    fn objects(&self, node: &Term, local: &str) -> Vec<Term> {
        let mut v: Vec<Term> = self
            .data
            .quads_matching(Some(node), Some(&rr(local)), None, None)
            .map(|q| q.object)
            .collect();
        v.sort();
        v
    }

    fn one(&self, node: &Term, local: &str, map: &str) -> Result<Option<Term>, MappingError> {
        let mut v = self.objects(node, local);
        match v.len() {
            0 => Ok(None),
            1 => Ok(v.pop()),
            _ => Err(MappingError::Invalid(format!("{map}: more than one rr:{local}"))),
        }
    }

    fn string(&self, node: &Term, local: &str, map: &str) -> Result<Option<String>, MappingError> {
        match self.one(node, local, map)? {
            None => Ok(None),
            Some(Term::Literal(l)) => Ok(Some(l.lexical().to_string())),
            Some(other) => Err(MappingError::Invalid(format!(
                "{map}: rr:{local} must be a literal, got {other}"
            ))),
        }
    }

    fn iri(&self, node: &Term, local: &str, map: &str) -> Result<Option<Iri>, MappingError> {
        match self.one(node, local, map)? {
            None => Ok(None),
            Some(Term::Iri(i)) => Ok(Some(i)),
            Some(other) => Err(MappingError::Invalid(format!(
                "{map}: rr:{local} must be an IRI, got {other}"
            ))),
        }
    }

    /// Rejects any `rr:` property outside `allowed` on `node`.
    fn only(&self, node: &Term, allowed: &[&str]) -> Result<(), MappingError> {
        let mut seen = BTreeSet::new();
        for q in self.data.quads_matching(Some(node), None, None, None) {
            if let Some(local) = q.predicate.as_str().strip_prefix(RR) {
                if !allowed.contains(&local) {
                    seen.insert(local.to_string());
                }
            }
        }
        match seen.into_iter().next() {
            Some(local) => Err(MappingError::UnsupportedR2RML(format!("rr:{local}"))),
            None => Ok(()),
        }
    }

    fn template(&self, pattern: &str, term_type: TermType) -> Result<Template, MappingError> {
        let mut t = Template::parse(pattern)?;
        if term_type == TermType::Iri {
            t.expand_leading_prefix(self.prefixes);
        }
        Ok(t)
    }

    fn graph_templates(&self, node: &Term, map: &str) -> Result<Vec<Template>, MappingError> {
        let mut out = Vec::new();
        for g in self.objects(node, "graphMap") {
            self.only(&g, &["template", "termType"])?;
            if let Some(tt) = self.iri(&g, "termType", map)? {
                if tt != rr("IRI") {
                    return Err(MappingError::UnsupportedR2RML(format!("graph map term type {tt}")));
                }
            }
            let pattern = self
                .string(&g, "template", map)?
                .ok_or_else(|| MappingError::MissingField {
                    map: map.to_string(),
                    field: "rr:template in rr:graphMap",
                })?;
            out.push(self.template(&pattern, TermType::Iri)?);
        }
        Ok(out)
    }

    fn subject_map(&self, node: &Term, map: &str) -> Result<SubjectMapSpec, MappingError> {
        self.only(node, &["template", "class", "termType", "graphMap"])?;
        if let Some(tt) = self.iri(node, "termType", map)? {
            if tt != rr("IRI") {
                return Err(MappingError::UnsupportedR2RML(format!("subject term type {tt}")));
            }
        }
        let pattern = self
            .string(node, "template", map)?
            .ok_or_else(|| MappingError::MissingField {
                map: map.to_string(),
                field: "rr:template in rr:subjectMap",
            })?;
        let mut classes = Vec::new();
        for c in self.objects(node, "class") {
            match c {
                Term::Iri(i) => classes.push(i),
                other => return Err(MappingError::Invalid(format!("{map}: rr:class {other} is not an IRI"))),
            }
        }
        Ok(SubjectMapSpec {
            template: self.template(&pattern, TermType::Iri)?,
            classes,
            graph_templates: self.graph_templates(node, map)?,
        })
    }

    fn object_map(&self, node: &Term, map: &str) -> Result<TermMapSpec, MappingError> {
        self.only(
            node,
            &[
                "constant",
                "template",
                "termType",
                "language",
                "datatype",
                "parentTriplesMap",
            ],
        )?;
        if let Some(parent) = self.one(node, "parentTriplesMap", map)? {
            return match parent {
                Term::Iri(i) => Ok(TermMapSpec::ParentRef(i)),
                other => Err(MappingError::Invalid(format!(
                    "{map}: parent map {other} is not an IRI"
                ))),
            };
        }
        if let Some(c) = self.one(node, "constant", map)? {
            return Ok(TermMapSpec::Constant(c));
        }
        let pattern = self
            .string(node, "template", map)?
            .ok_or_else(|| MappingError::MissingField {
                map: map.to_string(),
                field: "rr:constant, rr:template or rr:parentTriplesMap in rr:objectMap",
            })?;
        let language = self.string(node, "language", map)?;
        let datatype = self.iri(node, "datatype", map)?;
        if language.is_some() && datatype.is_some() {
            return Err(MappingError::Invalid(format!(
                "{map}: rr:language and rr:datatype are exclusive"
            )));
        }
        let term_type = match self.iri(node, "termType", map)? {
            None if language.is_some() || datatype.is_some() => TermType::Literal,
            None => TermType::Iri,
            Some(t) if t == rr("IRI") => TermType::Iri,
            Some(t) if t == rr("Literal") => TermType::Literal,
            Some(t) => return Err(MappingError::UnsupportedR2RML(format!("object term type {t}"))),
        };
        if term_type == TermType::Iri && (language.is_some() || datatype.is_some()) {
            return Err(MappingError::Invalid(format!(
                "{map}: IRI term map with language or datatype"
            )));
        }
        if let Some(l) = &language {
            if !crate::rdf::term_valid_language_tag(l) {
                return Err(MappingError::Invalid(format!("{map}: invalid language tag '{l}'")));
            }
        }
        Ok(TermMapSpec::Template {
            template: self.template(&pattern, term_type)?,
            term_type,
            language,
            datatype,
        })
    }

    fn pom(&self, node: &Term, map: &str) -> Result<PredicateObjectMapSpec, MappingError> {
        self.only(node, &["predicate", "objectMap", "object", "graphMap"])?;
        let predicate = self
            .iri(node, "predicate", map)?
            .ok_or_else(|| MappingError::MissingField {
                map: map.to_string(),
                field: "rr:predicate",
            })?;
        let object = match (self.one(node, "objectMap", map)?, self.one(node, "object", map)?) {
            (Some(om), None) => self.object_map(&om, map)?,
            (None, Some(c)) => TermMapSpec::Constant(c),
            (None, None) => {
                return Err(MappingError::MissingField {
                    map: map.to_string(),
                    field: "rr:objectMap",
                })
            }
            (Some(_), Some(_)) => return Err(MappingError::Invalid(format!("{map}: both rr:objectMap and rr:object"))),
        };
        Ok(PredicateObjectMapSpec {
            predicate,
            object,
            graph_templates: self.graph_templates(node, map)?,
        })
    }

    fn triples_map(&self, node: &Term) -> Result<TriplesMapSpec, MappingError> {
        let name = match node {
            Term::Iri(i) => i.clone(),
            other => {
                return Err(MappingError::Invalid(format!(
                    "triples map {other} must be named by an IRI"
                )))
            }
        };
        let map = name.as_str().to_string();
        self.only(node, &["logicalTable", "subjectMap", "predicateObjectMap"])?;
        let lt = self
            .one(node, "logicalTable", &map)?
            .ok_or_else(|| MappingError::MissingField {
                map: map.clone(),
                field: "rr:logicalTable",
            })?;
        self.only(&lt, &["tableName"])?;
        let table = self
            .string(&lt, "tableName", &map)?
            .ok_or_else(|| MappingError::MissingField {
                map: map.clone(),
                field: "rr:tableName",
            })?;
        let sm = self
            .one(node, "subjectMap", &map)?
            .ok_or_else(|| MappingError::MissingField {
                map: map.clone(),
                field: "rr:subjectMap",
            })?;
        let subject = self.subject_map(&sm, &map)?;
        let mut poms = Vec::new();
        // blank node labels are allocation-ordered, so this follows document order
        let mut pom_nodes = self.objects(node, "predicateObjectMap");
        pom_nodes.sort_by_key(blank_ordinal);
        for p in pom_nodes {
            poms.push(self.pom(&p, &map)?);
        }
        Ok(TriplesMapSpec {
            name,
            table,
            subject,
            poms,
        })
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

/// Parses a Turtle mapping document. Relative IRIs resolve against
/// [`MAPPING_BASE`].
pub fn parse_mapping(text: &str) -> Result<MappingDocument, MappingError> {
    let (data, prefixes) = parse_turtle_with_base(text, Some(MAPPING_BASE))?;
    let reader = Reader {
        data: &data,
        prefixes: &prefixes,
    };
    let mut nodes: BTreeSet<Term> = data
        .quads_matching(
            None,
            Some(&Iri::new_unchecked(rdf::TYPE)),
            Some(&Term::Iri(rr("TriplesMap"))),
            None,
        )
        .map(|q| q.subject.into())
        .collect();
    nodes.extend(
        data.quads_matching(None, Some(&rr("logicalTable")), None, None)
            .map(|q| Term::from(q.subject)),
    );
    let mut maps = Vec::new();
    for n in &nodes {
        maps.push(reader.triples_map(n)?);
    }
    maps.sort_by(|a, b| a.name.cmp(&b.name));
    for m in &maps {
        for p in &m.poms {
            if let TermMapSpec::ParentRef(parent) = &p.object {
                let target = maps
                    .iter()
                    .find(|x| &x.name == parent)
                    .ok_or_else(|| MappingError::Invalid(format!("{}: unknown parent triples map {parent}", m.name)))?;
                if target.table != m.table {
                    return Err(MappingError::UnsupportedR2RML(
                        "rr:parentTriplesMap across logical tables".into(),
                    ));
                }
            }
        }
    }
    Ok(MappingDocument { maps, prefixes })
}
