use std::collections::HashMap;
use std::path::Path;

use super::template::TermType;
use super::*;
use crate::rdf::vocab::rdf;
use crate::rdf::{Dataset, GraphName, Literal, Quad, Subject};

/// Runs every triples map over its table. A triple goes to each graph of
/// its subject map and its predicate-object map, or to the default graph
/// when neither declares one; NULL cells drop the affected term or graph.
pub fn execute(doc: &MappingDocument, tables: &HashMap<String, LogicalTable>) -> Result<Dataset, MappingError> {
    let mut out = Dataset::new();
    for map in &doc.maps {
        let table = tables
            .get(&map.table)
            .ok_or_else(|| MappingError::TableNotFound(map.table.clone()))?;
        check_columns(doc, map, table)?;
        for row in &table.rows {
            run_row(doc, map, table, row, &mut out)?;
        }
    }
    Ok(out)
}

/// Loads `{dir}/{table}.csv` for each referenced table, then executes.
pub fn execute_dir(doc: &MappingDocument, dir: &Path) -> Result<Dataset, MappingError> {
    let tables = load_tables(dir, &doc.table_names())?;
    execute(doc, &tables)
}

fn check_columns(doc: &MappingDocument, map: &TriplesMapSpec, table: &LogicalTable) -> Result<(), MappingError> {
    let mut templates: Vec<&Template> = vec![&map.subject.template];
    templates.extend(&map.subject.graph_templates);
    for p in &map.poms {
        templates.extend(&p.graph_templates);
        match &p.object {
            TermMapSpec::Template { template, .. } => templates.push(template),
            TermMapSpec::ParentRef(parent) => {
                if let Some(pm) = doc.get(parent) {
                    templates.push(&pm.subject.template);
                }
            }
            TermMapSpec::Constant(_) => {}
        }
    }
    for t in templates {
        for c in t.columns() {
            if table.column_index(c).is_none() {
                return Err(MappingError::UnknownColumn(format!("{}.{c}", table.name)));
            }
        }
    }
    Ok(())
}

/// `Ok(None)` when a referenced cell is NULL.
fn expand(
    t: &Template,
    term_type: TermType,
    table: &LogicalTable,
    row: &[String],
) -> Result<Option<String>, MappingError> {
    let r = t.expand_with(term_type, |c| {
        let i = table
            .column_index(c)
            .ok_or_else(|| MappingError::UnknownColumn(c.to_string()))?;
        let v = row[i].as_str();
        Ok((!v.is_empty()).then_some(v))
    });
    match r {
        Ok(s) => Ok(Some(s)),
        Err(MappingError::NullCell(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn expand_iri(t: &Template, table: &LogicalTable, row: &[String]) -> Result<Option<Iri>, MappingError> {
    match expand(t, TermType::Iri, table, row)? {
        None => Ok(None),
        Some(s) => Iri::new(s.clone()).map(Some).map_err(|_| MappingError::InvalidIri(s)),
    }
}

/// Expanded graph names; `None` when no template is declared.
fn graphs(
    templates: &[&Template],
    table: &LogicalTable,
    row: &[String],
) -> Result<Option<Vec<GraphName>>, MappingError> {
    if templates.is_empty() {
        return Ok(None);
    }
    let mut out = Vec::new();
    for t in templates {
        if let Some(g) = expand_iri(t, table, row)? {
            out.push(GraphName::Named(g));
        }
    }
    Ok(Some(out))
}

fn emit(out: &mut Dataset, s: &Subject, p: &Iri, o: &Term, graphs: &Option<Vec<GraphName>>) {
    match graphs {
        None => {
            out.insert(Quad::new(s.clone(), p.clone(), o.clone(), GraphName::Default));
        }
        Some(gs) => {
            for g in gs {
                out.insert(Quad::new(s.clone(), p.clone(), o.clone(), g.clone()));
            }
        }
    }
}

fn run_row(
    doc: &MappingDocument,
    map: &TriplesMapSpec,
    table: &LogicalTable,
    row: &[String],
    out: &mut Dataset,
) -> Result<(), MappingError> {
    let Some(subject) = expand_iri(&map.subject.template, table, row)? else {
        return Ok(());
    };
    let subject = Subject::Iri(subject);
    let subject_graph_templates: Vec<&Template> = map.subject.graph_templates.iter().collect();
    let subject_graphs = graphs(&subject_graph_templates, table, row)?;
    let rdf_type = Iri::new_unchecked(rdf::TYPE);
    for c in &map.subject.classes {
        emit(out, &subject, &rdf_type, &Term::Iri(c.clone()), &subject_graphs);
    }
    for pom in &map.poms {
        let object = match &pom.object {
            TermMapSpec::Constant(t) => Some(t.clone()),
            TermMapSpec::ParentRef(parent) => {
                let pm = doc
                    .get(parent)
                    .ok_or_else(|| MappingError::Invalid(format!("unknown parent triples map {parent}")))?;
                expand_iri(&pm.subject.template, table, row)?.map(Term::Iri)
            }
            TermMapSpec::Template {
                template,
                term_type: TermType::Iri,
                ..
            } => expand_iri(template, table, row)?.map(Term::Iri),
            TermMapSpec::Template {
                template,
                term_type: TermType::Literal,
                language,
                datatype,
            } => match expand(template, TermType::Literal, table, row)? {
                None => None,
                Some(lex) => Some(match (language, datatype) {
                    (Some(l), _) => Literal::lang(lex, l)
                        .map_err(|e| MappingError::Invalid(e.to_string()))?
                        .into(),
                    (None, Some(dt)) => Literal::typed(lex, dt.clone())
                        .map_err(|e| MappingError::Invalid(e.to_string()))?
                        .into(),
                    (None, None) => Literal::simple(lex).into(),
                }),
            },
        };
        let Some(object) = object else { continue };
        let mut templates = subject_graph_templates.clone();
        templates.extend(pom.graph_templates.iter());
        let mut gs = graphs(&templates, table, row)?;
        if let Some(v) = gs.as_mut() {
            v.sort();
            v.dedup();
        }
        emit(out, &subject, &pom.predicate, &object, &gs);
    }
    Ok(())
}
