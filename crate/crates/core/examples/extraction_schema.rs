//! Renders the extraction prompt for the bundled schema and normalizes a
//! model response against it.

use std::path::Path;

use kgsu_core::enrichment::{parse_llm_response, parse_schema, render_system_prompt};

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/enrichment/schema.csv");
    let schema = parse_schema(&std::fs::read_to_string(path).expect("schema file")).expect("schema parses");
    println!("{}", render_system_prompt(&schema));

    let response =
        r#"{"grassland": ["Yes"], "taxa": ["plants", "fungi"], "keywords": ["grazing", "meadows"], "mood": "curious"}"#;
    let row = parse_llm_response(response, &schema).expect("JSON object");
    for (category, cell) in &row.cells {
        println!("{category} = {cell:?}");
    }
    println!("{}", serde_json::to_string_pretty(&row.warnings).expect("serializes"));
}
