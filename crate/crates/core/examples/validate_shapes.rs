//! Validates the mapped fixture against the bundled shapes, then breaks one
//! identification-unit label and validates again.

use std::path::Path;

use kgsu_core::mapping::{execute_dir, parse_mapping};
use kgsu_core::rdf::vocab::rdfs;
use kgsu_core::rdf::{Iri, Literal, Quad, Term};
use kgsu_core::shacl::{parse_shapes, validate};

fn main() {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mapping = std::fs::read_to_string(fixtures.join("mapping.ttl")).expect("mapping fixture");
    let mut d = execute_dir(
        &parse_mapping(&mapping).expect("mapping parses"),
        &fixtures.join("tables"),
    )
    .expect("executes");
    let shapes =
        parse_shapes(&std::fs::read_to_string(fixtures.join("shapes.ttl")).expect("shapes")).expect("shapes parse");
    println!("{} shapes", shapes.len());
    print!("{}", validate(&d, &shapes).to_text());

    let unit =
        Iri::new("http://example.com/base/semunit/namedindividualidentificationunit/Publication_31709").expect("IRI");
    let label = Iri::new(rdfs::LABEL).expect("IRI");
    let old: Vec<Quad> = d
        .quads_matching(Some(&Term::Iri(unit.clone())), Some(&label), None, None)
        .collect();
    for q in old {
        d.remove(&q);
        d.insert(Quad::new(
            q.subject,
            q.predicate,
            Literal::simple("not a label"),
            q.graph,
        ));
    }
    print!("{}", validate(&d, &shapes).to_text());
}
