use serde_json::{json, Map, Value};

use super::ast::Variable;
use super::eval::Solutions;
use crate::rdf::vocab::xsd;
use crate::rdf::{BlankNode, Iri, Literal, Term};

#[derive(Debug, thiserror::Error)]
pub enum ResultsJsonError {
    #[error("malformed results JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid results document: {0}")]
    Shape(String),
}

pub fn term_to_json(t: &Term) -> Value {
    match t {
        Term::Iri(i) => json!({"type": "uri", "value": i.as_str()}),
        Term::BlankNode(b) => json!({"type": "bnode", "value": b.label()}),
        Term::Literal(l) => {
            let mut m = Map::new();
            m.insert("type".into(), "literal".into());
            m.insert("value".into(), l.lexical().into());
            if let Some(lang) = l.language() {
                m.insert("xml:lang".into(), lang.into());
            } else if l.datatype().as_str() != xsd::STRING {
                m.insert("datatype".into(), l.datatype().as_str().into());
            }
            Value::Object(m)
        }
    }
}

/// Results as a JSON value; absent bindings are omitted from their row object.
pub fn solutions_to_value(solutions: &Solutions) -> Value {
    let bindings: Vec<Value> = solutions
        .rows
        .iter()
        .map(|row| {
            let mut m = Map::new();
            for (v, t) in solutions.variables.iter().zip(row) {
                if let Some(t) = t {
                    m.insert(v.name().to_string(), term_to_json(t));
                }
            }
            Value::Object(m)
        })
        .collect();
    let vars: Vec<&str> = solutions.variables.iter().map(Variable::name).collect();
    json!({"head": {"vars": vars}, "results": {"bindings": bindings}})
}

pub fn solutions_to_json(solutions: &Solutions) -> String {
    solutions_to_value(solutions).to_string()
}

pub fn term_from_json(v: &Value) -> Result<Term, ResultsJsonError> {
    let shape = |m: &str| ResultsJsonError::Shape(m.to_string());
    let kind = v
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| shape("term without type"))?;
    let value = v
        .get("value")
        .and_then(Value::as_str)
        .ok_or_else(|| shape("term without value"))?;
    let bad = |e: crate::rdf::TermError| ResultsJsonError::Shape(e.to_string());
    match kind {
        "uri" => Iri::new(value).map(Term::Iri).map_err(bad),
        "bnode" => BlankNode::new(value).map(Term::BlankNode).map_err(bad),
        "literal" | "typed-literal" => {
            let lang = v.get("xml:lang").or_else(|| v.get("lang")).and_then(Value::as_str);
            if let Some(lang) = lang {
                return Literal::lang(value, lang).map(Term::from).map_err(bad);
            }
            match v.get("datatype").and_then(Value::as_str) {
                Some(dt) => Literal::typed(value, Iri::new(dt).map_err(bad)?)
                    .map(Term::from)
                    .map_err(bad),
                None => Ok(Literal::simple(value).into()),
            }
        }
        other => Err(ResultsJsonError::Shape(format!("unknown term type '{other}'"))),
    }
}

pub fn solutions_from_json(text: &str) -> Result<Solutions, ResultsJsonError> {
    let doc: Value = serde_json::from_str(text)?;
    let shape = |m: &str| ResultsJsonError::Shape(m.to_string());
    let variables: Vec<Variable> = doc
        .pointer("/head/vars")
        .and_then(Value::as_array)
        .ok_or_else(|| shape("missing head.vars"))?
        .iter()
        .map(|v| {
            v.as_str()
                .map(Variable::new)
                .ok_or_else(|| shape("variable name is not a string"))
        })
        .collect::<Result<_, _>>()?;
    let bindings = doc
        .pointer("/results/bindings")
        .and_then(Value::as_array)
        .ok_or_else(|| shape("missing results.bindings"))?;
    let mut rows = Vec::with_capacity(bindings.len());
    for b in bindings {
        let obj = b.as_object().ok_or_else(|| shape("binding is not an object"))?;
        let row = variables
            .iter()
            .map(|v| obj.get(v.name()).map(term_from_json).transpose())
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(Solutions { variables, rows })
}
