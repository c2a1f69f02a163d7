#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use kgsu_core::mapping::{execute_dir, parse_mapping};
use kgsu_core::rdf::{Dataset, Iri, Term};
use kgsu_core::sparql::{evaluate, parse_query, QueryResult, Solutions};

pub const BASE: &str = "http://example.com/base/";

pub fn fixture_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

pub fn fixture_text(rel: &str) -> String {
    std::fs::read_to_string(fixture_path(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

/// The bundled mapping executed over the bundled tables.
pub fn fixture_dataset() -> Dataset {
    let doc = parse_mapping(&fixture_text("mapping.ttl")).expect("fixture mapping parses");
    execute_dir(&doc, &fixture_path("tables")).expect("fixture mapping executes")
}

pub fn query_text(name: &str) -> String {
    fixture_text(&format!("queries/{name}.rq"))
}

pub fn select(dataset: &Dataset, text: &str) -> Solutions {
    let q = parse_query(text).expect("query parses");
    match evaluate(dataset, &q).expect("query evaluates") {
        QueryResult::Solutions(s) => s,
        other => panic!("expected solutions, got {other:?}"),
    }
}

pub fn column_set(s: &Solutions, var: &str) -> BTreeSet<Term> {
    s.column(var).into_iter().cloned().collect()
}

pub fn ex(local: &str) -> Iri {
    Iri::new(format!("{BASE}{local}")).expect("valid IRI")
}

pub fn unit(segment: &str, local: &str) -> Iri {
    ex(&format!("semunit/{segment}/{local}"))
}

/// Every query file shipped with the fixtures, by file stem.
pub fn all_queries() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(fixture_path("queries"))
        .expect("queries directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "rq"))
        .map(|p| {
            let stem = p.file_stem().unwrap().to_string_lossy().into_owned();
            (stem, std::fs::read_to_string(&p).expect("query file"))
        })
        .collect();
    out.sort();
    out
}
