//! Generates a synthetic graph (full size by default, or the quad count
//! given as the first argument), loads it from TriG and times unit lookups.

use std::time::Instant;

use kgsu_core::rdf::GraphName;
use kgsu_core::syntax::{parse_trig, serialize_trig, PrefixTable};
use kgsu_core::synth::{generate, identification_unit, FULL_SCALE_QUADS};

fn main() {
    let target = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(FULL_SCALE_QUADS);
    let d = generate(target, 42);
    let text = serialize_trig(&d, &PrefixTable::common(), true).expect("generated data is ground");
    println!("generated {} quads, {} bytes of TriG", d.len(), text.len());

    let start = Instant::now();
    let (loaded, _) = parse_trig(&text).expect("generated TriG parses");
    println!("loaded {} quads in {:.2?}", loaded.len(), start.elapsed());

    for i in [0, target / 100, target / 50] {
        let g = GraphName::Named(identification_unit(i));
        let start = Instant::now();
        let n = loaded.quads_matching(None, None, None, Some(&g)).count();
        println!("unit {i}: {n} quads in {:.2?}", start.elapsed());
    }
}
