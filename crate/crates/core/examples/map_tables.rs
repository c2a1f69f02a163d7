//! Executes the bundled R2RML mapping over the bundled CSV tables and
//! summarizes where the triples landed.

use std::path::Path;

use kgsu_core::mapping::{execute_dir, parse_mapping};
use kgsu_core::rdf::GraphName;

fn main() {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let text = std::fs::read_to_string(fixtures.join("mapping.ttl")).expect("mapping fixture");
    let doc = parse_mapping(&text).expect("mapping parses");
    println!("{} triples maps over tables {:?}", doc.maps.len(), doc.table_names());
    let d = execute_dir(&doc, &fixtures.join("tables")).expect("mapping executes");
    let graphs = d.graphs();
    let default = d.quads_matching(None, None, None, Some(&GraphName::Default)).count();
    println!(
        "{} quads, {} graphs, {default} quads in the default graph",
        d.len(),
        graphs.len()
    );
    let unit = graphs
        .iter()
        .find(|g| matches!(g, GraphName::Named(i) if i.as_str().ends_with("namedindividualidentificationunit/Publication_31709")))
        .expect("identification unit of Publication_31709");
    for q in d.quads_matching(None, None, None, Some(unit)) {
        println!("  {} {} {}", q.subject, q.predicate, q.object);
    }
}
