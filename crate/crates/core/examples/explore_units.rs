//! Lists the units about one publication, then prints the detail and the
//! node-link view of its links compound.

use std::path::Path;

use kgsu_core::mapping::{execute_dir, parse_mapping};
use kgsu_core::rdf::Iri;
use kgsu_core::units::{associations, unit_detail, units_for_subject, vis_graph};

fn main() {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mapping = std::fs::read_to_string(fixtures.join("mapping.ttl")).expect("mapping fixture");
    let d = execute_dir(
        &parse_mapping(&mapping).expect("mapping parses"),
        &fixtures.join("tables"),
    )
    .expect("executes");

    let publication = Iri::new("http://example.com/base/Publication_31149").expect("IRI");
    let units = units_for_subject(&d, &publication);
    println!(
        "{} direct units, {} parent compounds",
        units.direct.len(),
        units.parents.len()
    );
    for u in &units.direct {
        println!("  {u}");
    }

    let links = Iri::new("http://example.com/base/semunit/linksCompoundUnit/Dataset_20907").expect("IRI");
    println!("{} associated units", associations(&d, &links).len());
    let detail = unit_detail(&d, &links).expect("links compound exists");
    println!("{}", serde_json::to_string_pretty(&detail).expect("serializes"));
    let vis = vis_graph(&d, &links);
    println!("{} nodes, {} edges", vis.nodes.len(), vis.edges.len());
    for n in vis.nodes.iter().filter(|n| n.kind == "iri").take(5) {
        println!("  {} = {}", n.label, n.id);
    }
}
