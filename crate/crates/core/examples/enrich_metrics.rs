//! Scores predicted category values against ground truth, per category.

use std::path::Path;

use kgsu_core::enrichment::{evaluate_tables, metrics_to_csv, parse_schema, LabelTable};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/enrichment");
    let read = |name: &str| std::fs::read_to_string(dir.join(name)).expect("fixture file");
    let pred = LabelTable::from_csv_str(&read("pred.csv")).expect("predictions");
    let truth = LabelTable::from_csv_str(&read("truth.csv")).expect("ground truth");
    let schema = parse_schema(&read("schema.csv")).expect("schema");
    let rows = evaluate_tables(&pred, &truth, Some(&schema)).expect("comparable tables");
    print!("{}", metrics_to_csv(&rows));
}
