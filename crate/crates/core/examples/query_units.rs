//! Runs the bundled query files against the mapped fixture and prints the
//! row count of each, followed by the rows of the unit-content pattern.

use std::path::Path;

use kgsu_core::mapping::{execute_dir, parse_mapping};
use kgsu_core::sparql::{evaluate, parse_query, solutions_to_json, QueryResult};

fn main() {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mapping = std::fs::read_to_string(fixtures.join("mapping.ttl")).expect("mapping fixture");
    let d = execute_dir(
        &parse_mapping(&mapping).expect("mapping parses"),
        &fixtures.join("tables"),
    )
    .expect("executes");

    let mut files: Vec<_> = std::fs::read_dir(fixtures.join("queries"))
        .expect("queries dir")
        .map(|e| e.expect("entry").path())
        .collect();
    files.sort();
    for path in files {
        let text = std::fs::read_to_string(&path).expect("query file");
        let q = parse_query(&text).expect("query parses");
        let name = path.file_stem().expect("stem").to_string_lossy();
        match evaluate(&d, &q).expect("query evaluates") {
            QueryResult::Solutions(s) => println!("{name:>16}: {} rows", s.len()),
            QueryResult::Triples(t) => println!("{name:>16}: {} triples", t.len()),
        }
    }

    let pattern1 = std::fs::read_to_string(fixtures.join("queries/pattern1.rq")).expect("pattern1");
    if let QueryResult::Solutions(s) = evaluate(&d, &parse_query(&pattern1).expect("parses")).expect("evaluates") {
        println!("{}", solutions_to_json(&s));
    }
}
