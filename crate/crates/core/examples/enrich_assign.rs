//! Assigns anchor labels to the bundled document vectors and reports the
//! coverage trade-off of the similarity threshold.

use std::path::Path;

use kgsu_core::enrichment::{
    assign, coverage_curve, read_anchors_jsonl, read_docs_jsonl, threshold_for_coverage, AssignmentParams,
};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/enrichment");
    let docs = read_docs_jsonl(&std::fs::read_to_string(dir.join("docs.jsonl")).expect("docs")).expect("docs parse");
    let anchors = read_anchors_jsonl(&std::fs::read_to_string(dir.join("anchors.jsonl")).expect("anchors"))
        .expect("anchors parse");

    let params = AssignmentParams::default();
    println!(
        "threshold={} margin={} max_labels={}",
        params.threshold, params.margin, params.max_labels
    );
    let out = assign(&docs, &anchors, &params).expect("assignment");
    for a in &out {
        let labels: Vec<String> = a
            .labels
            .iter()
            .map(|l| format!("{}:{:.3}", l.anchor_id, l.similarity))
            .collect();
        println!("{} top1={:.3} {}", a.doc_id, a.top1, labels.join(" "));
    }
    let multi = out.iter().filter(|a| a.labels.len() > 1).count();
    let none = out.iter().filter(|a| a.labels.is_empty()).count();
    println!("{multi} documents with two labels, {none} unassigned");

    let thresholds: Vec<f64> = (0..=9).map(|i| f64::from(i) / 10.0).collect();
    for (t, c) in coverage_curve(&docs, &anchors, &thresholds).expect("curve") {
        println!("coverage at {t:.1}: {c:.3}");
    }
    let t = threshold_for_coverage(&docs, &anchors, 0.8).expect("threshold");
    println!("largest threshold covering 80%: {t:.4}");
}
