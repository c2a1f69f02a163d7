//! Request operations shared by the HTTP handlers and the CLI, so both
//! produce the same bodies.

use std::collections::{BTreeMap, HashMap};

use kgsu_core::mapping::{execute, parse_mapping, LogicalTable};
use kgsu_core::rdf::{Dataset, GraphName, Iri};
use kgsu_core::shacl::{parse_shapes, validate, ValidationReport};
use kgsu_core::sparql::{evaluate, parse_query, solutions_to_value, QueryResult, Solutions};
use kgsu_core::syntax::parse_trig;
use kgsu_core::units::{unit_detail, units_for_subject, vis_graph, TripleJson};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::ApiError;
use crate::store::{to_trig, Store};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Body {
    pub content_type: &'static str,
    pub text: String,
}

impl Body {
    pub fn json<T: Serialize>(value: &T) -> Self {
        let mut text = serde_json::to_string(value).expect("response serializes");
        text.push('\n');
        Self {
            content_type: "application/json",
            text,
        }
    }

    fn trig(text: String) -> Self {
        Self {
            content_type: "application/trig",
            text,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryFormat {
    Json,
    Trig,
}

impl QueryFormat {
    pub fn parse(s: &str) -> Result<Self, ApiError> {
        match s {
            "json" => Ok(Self::Json),
            "trig" => Ok(Self::Trig),
            other => Err(ApiError::bad_request(format!(
                "unknown format '{other}', expected json or trig"
            ))),
        }
    }
}

pub fn parse_iri(s: &str) -> Result<Iri, ApiError> {
    Iri::new(s).map_err(|e| ApiError::bad_request(format!("'{s}' is not an absolute IRI: {e}")))
}

pub fn run_query(d: &Dataset, text: &str) -> Result<QueryResult, ApiError> {
    let q = parse_query(text)?;
    Ok(evaluate(d, &q)?)
}

/// Keeps the first `max_rows` rows; reports whether any were dropped.
pub fn truncate(mut s: Solutions, max_rows: usize) -> (Solutions, bool) {
    let truncated = s.rows.len() > max_rows;
    s.rows.truncate(max_rows);
    (s, truncated)
}

/// SELECT results as SPARQL JSON plus a `truncated` flag; CONSTRUCT
/// results as `{triples, truncated}` or as TriG.
pub fn query_body(d: &Dataset, text: &str, format: QueryFormat, max_rows: usize) -> Result<Body, ApiError> {
    match (run_query(d, text)?, format) {
        (QueryResult::Solutions(s), QueryFormat::Json) => {
            let (s, truncated) = truncate(s, max_rows);
            let mut v = solutions_to_value(&s);
            v["truncated"] = Value::Bool(truncated);
            Ok(Body::json(&v))
        }
        (QueryResult::Solutions(_), QueryFormat::Trig) => {
            Err(ApiError::bad_request("format trig applies to CONSTRUCT queries only"))
        }
        (QueryResult::Triples(mut t), format) => {
            let truncated = t.len() > max_rows;
            t.truncate(max_rows);
            match format {
                QueryFormat::Json => {
                    let triples: Vec<TripleJson> = t.iter().map(TripleJson::from).collect();
                    Ok(Body::json(&json!({ "triples": triples, "truncated": truncated })))
                }
                QueryFormat::Trig => {
                    let mut out = Dataset::new();
                    out.extend(t.into_iter().map(|x| x.in_graph(GraphName::Default)));
                    let mut text = to_trig(&out)?;
                    if truncated {
                        text.insert_str(0, &format!("# truncated to {max_rows} triples\n"));
                    }
                    Ok(Body::trig(text))
                }
            }
        }
    }
}

pub fn graphs_body(d: &Dataset) -> Body {
    let graphs: Vec<Value> = d
        .graphs()
        .into_iter()
        .map(|g| {
            let quads = d.quads_matching(None, None, None, Some(&g)).count();
            let name = match g {
                GraphName::Default => Value::Null,
                GraphName::Named(i) => Value::String(i.into_string()),
            };
            json!({ "name": name, "quads": quads })
        })
        .collect();
    Body::json(&json!({ "graphs": graphs }))
}

pub fn units_body(d: &Dataset, subject: &str) -> Result<Body, ApiError> {
    Ok(Body::json(&units_for_subject(d, &parse_iri(subject)?)))
}

pub fn unit_body(d: &Dataset, iri: &str) -> Result<Body, ApiError> {
    let iri = parse_iri(iri)?;
    let detail = unit_detail(d, &iri).ok_or_else(|| ApiError::not_found(format!("no semantic unit {iri}")))?;
    Ok(Body::json(&detail))
}

pub fn vis_body(d: &Dataset, iri: &str) -> Result<Body, ApiError> {
    let iri = parse_iri(iri)?;
    let graph = GraphName::Named(iri.clone());
    if d.quads_matching(None, None, None, Some(&graph)).next().is_none() {
        return Err(ApiError::not_found(format!("no graph {iri}")));
    }
    Ok(Body::json(&vis_graph(d, &iri)))
}

pub fn health_body(d: &Dataset) -> Body {
    Body::json(&json!({ "status": "ok", "quads": d.len() }))
}

pub fn validate_report(d: &Dataset, shapes: &str) -> Result<ValidationReport, ApiError> {
    Ok(validate(d, &parse_shapes(shapes)?))
}

/// Validation report JSON and whether the data conforms.
pub fn validate_body(d: &Dataset, shapes: &str) -> Result<(Body, bool), ApiError> {
    let report = validate_report(d, shapes)?;
    Ok((Body::json(&report.to_json()), report.conforms))
}

fn write_summary(added: usize, total: usize) -> Body {
    Body::json(&json!({ "added": added, "quads": total }))
}

/// Merges a TriG or Turtle document into the store.
pub fn load(store: &Store, trig: &str) -> Result<Body, ApiError> {
    let (incoming, _) = parse_trig(trig)?;
    store.write(|d| {
        let before = d.len();
        d.extend(incoming.iter());
        Ok(write_summary(d.len() - before, d.len()))
    })
}

/// Executes a mapping over CSV tables given as text.
pub fn map_dataset(mapping: &str, tables: &BTreeMap<String, String>) -> Result<Dataset, ApiError> {
    let doc = parse_mapping(mapping)?;
    let mut parsed = HashMap::new();
    for (name, text) in tables {
        parsed.insert(name.clone(), LogicalTable::from_csv_str(name.clone(), text)?);
    }
    Ok(execute(&doc, &parsed)?)
}

/// Executes a mapping and merges its output into the store.
pub fn map(store: &Store, mapping: &str, tables: &BTreeMap<String, String>) -> Result<Body, ApiError> {
    let mapped = map_dataset(mapping, tables)?;
    store.write(|d| {
        let before = d.len();
        d.extend(mapped.iter());
        Ok(write_summary(d.len() - before, d.len()))
    })
}
