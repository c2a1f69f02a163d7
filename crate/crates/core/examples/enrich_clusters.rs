//! Groups documents around their nearest anchor and labels each group with
//! its class-based TF-IDF terms.

use std::collections::BTreeMap;
use std::path::Path;

use kgsu_core::enrichment::{ctfidf, nearest_anchor_clusters, read_anchors_jsonl, read_docs_jsonl, tokenize};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/enrichment");
    let docs = read_docs_jsonl(&std::fs::read_to_string(dir.join("docs.jsonl")).expect("docs")).expect("docs parse");
    let anchors = read_anchors_jsonl(&std::fs::read_to_string(dir.join("anchors.jsonl")).expect("anchors"))
        .expect("anchors parse");

    let clusters = nearest_anchor_clusters(&docs, &anchors, 0.3).expect("clusters");
    let text_of = |id: &str| {
        docs.iter()
            .find(|d| d.id == id)
            .and_then(|d| d.text.clone())
            .unwrap_or_default()
    };
    let tokens: BTreeMap<String, Vec<Vec<String>>> = clusters
        .clusters
        .iter()
        .map(|c| {
            (
                c.anchor_id.clone(),
                c.member_ids.iter().map(|id| tokenize(&text_of(id))).collect(),
            )
        })
        .collect();
    let terms = ctfidf(&tokens, 5);
    for c in &clusters.clusters {
        let top: Vec<&str> = terms[&c.anchor_id].iter().map(|(t, _)| t.as_str()).collect();
        println!("{:<24} {:>3} docs  {}", c.label, c.n_docs, top.join(", "));
    }
    println!("{:<24} {:>3} docs", "(noise)", clusters.noise.len());
}
