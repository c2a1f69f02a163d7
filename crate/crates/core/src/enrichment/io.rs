use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::*;

fn read_jsonl<T: DeserializeOwned>(text: &str) -> Result<Vec<T>, EnrichError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(line).map_err(|e| EnrichError::Jsonl {
            line: i + 1,
            message: e.to_string(),
        })?);
    }
    Ok(out)
}

fn check_corpus<'a>(items: impl Iterator<Item = (&'a str, &'a [f64])>) -> Result<(), EnrichError> {
    let mut dim = None;
    let mut seen = HashSet::new();
    for (id, v) in items {
        if !seen.insert(id) {
            return Err(EnrichError::Duplicate(id.to_string()));
        }
        if v.is_empty() {
            return Err(EnrichError::DimensionMismatch {
                id: id.to_string(),
                expected: dim.unwrap_or(1),
                found: 0,
            });
        }
        match dim {
            None => dim = Some(v.len()),
            Some(d) if d != v.len() => {
                return Err(EnrichError::DimensionMismatch {
                    id: id.to_string(),
                    expected: d,
                    found: v.len(),
                })
            }
            Some(_) => {}
        }
    }
    Ok(())
}

/// One `{id, vector, text?}` object per line; blank lines are skipped.
pub fn read_docs_jsonl(text: &str) -> Result<Vec<DocVector>, EnrichError> {
    let docs: Vec<DocVector> = read_jsonl(text)?;
    check_corpus(docs.iter().map(|d| (d.id.as_str(), d.vector.as_slice())))?;
    Ok(docs)
}

/// One `{id, label, vector}` object per line.
pub fn read_anchors_jsonl(text: &str) -> Result<Vec<Anchor>, EnrichError> {
    let anchors: Vec<Anchor> = read_jsonl(text)?;
    check_corpus(anchors.iter().map(|a| (a.id.as_str(), a.vector.as_slice())))?;
    let mut labels = HashSet::new();
    for a in &anchors {
        if !labels.insert(a.label.as_str()) {
            return Err(EnrichError::Duplicate(a.label.clone()));
        }
    }
    Ok(anchors)
}

pub fn write_docs_jsonl(docs: &[DocVector]) -> String {
    let mut out = String::new();
    for d in docs {
        out.push_str(&serde_json::to_string(d).expect("documents serialize"));
        out.push('\n');
    }
    out
}

/// A CSV of labels per document: an `id` column, then one column per
/// category whose cells hold `;`-joined values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabelTable {
    pub categories: Vec<String>,
    pub rows: BTreeMap<String, BTreeMap<String, BTreeSet<String>>>,
}

impl LabelTable {
    pub fn from_csv_str(text: &str) -> Result<Self, EnrichError> {
        let csv_err = |e: csv::Error| EnrichError::Csv(e.to_string());
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
        let header: Vec<String> = rdr
            .headers()
            .map_err(csv_err)?
            .iter()
            .map(|h| h.trim().to_string())
            .collect();
        if header.first().map(String::as_str) != Some("id") {
            return Err(EnrichError::Csv("first column must be 'id'".into()));
        }
        let categories = header[1..].to_vec();
        let mut rows = BTreeMap::new();
        for rec in rdr.records() {
            let rec = rec.map_err(csv_err)?;
            let id = rec[0].trim().to_string();
            let cells = categories
                .iter()
                .zip(rec.iter().skip(1))
                .map(|(c, cell)| (c.clone(), split_cell(cell)))
                .collect();
            if rows.insert(id.clone(), cells).is_some() {
                return Err(EnrichError::Duplicate(id));
            }
        }
        Ok(Self { categories, rows })
    }

    fn values(&self, id: &str, category: &str) -> BTreeSet<String> {
        self.rows
            .get(id)
            .and_then(|r| r.get(category))
            .cloned()
            .unwrap_or_default()
    }
}

/// Values are trimmed and lowercased so that comparisons ignore case.
fn split_cell(cell: &str) -> BTreeSet<String> {
    cell.split(';')
        .map(|s| s.trim().to_lowercase())
        .filter(|s| !s.is_empty())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryMetrics {
    pub category: String,
    /// `binary` or `multilabel`.
    pub kind: &'static str,
    #[serde(flatten)]
    pub metrics: MetricsRow,
}

fn is_yes_no(sets: &[BTreeSet<String>]) -> bool {
    sets.iter().flatten().all(|v| v == "yes" || v == "no")
}

/// Scores predictions against ground truth per ground-truth category, over
/// the ground-truth documents. A document missing from the predictions
/// counts as an empty answer. A category is yes/no when the schema says so
/// or, without a schema, when every value on both sides is `yes` or `no`.
pub fn evaluate_tables(
    pred: &LabelTable,
    truth: &LabelTable,
    schema: Option<&ExtractionSchema>,
) -> Result<Vec<CategoryMetrics>, EnrichError> {
    evaluate_with(pred, truth, |category, p, t| {
        match schema.and_then(|s| s.get(category)) {
            Some(e) => e.allowed_answers == AllowedAnswers::YesNo,
            None => is_yes_no(p) && is_yes_no(t),
        }
    })
}

/// Like [`evaluate_tables`], scoring every category as a set of labels.
pub fn evaluate_tables_multilabel(pred: &LabelTable, truth: &LabelTable) -> Result<Vec<CategoryMetrics>, EnrichError> {
    evaluate_with(pred, truth, |_, _, _| false)
}

fn evaluate_with(
    pred: &LabelTable,
    truth: &LabelTable,
    is_binary: impl Fn(&str, &[BTreeSet<String>], &[BTreeSet<String>]) -> bool,
) -> Result<Vec<CategoryMetrics>, EnrichError> {
    let ids: Vec<&String> = truth.rows.keys().collect();
    let mut out = Vec::new();
    for category in &truth.categories {
        let p: Vec<BTreeSet<String>> = ids.iter().map(|id| pred.values(id, category)).collect();
        let t: Vec<BTreeSet<String>> = ids.iter().map(|id| truth.values(id, category)).collect();
        let binary = is_binary(category, &p, &t);
        let (kind, metrics) = if binary {
            let yes = |s: &BTreeSet<String>| s.contains("yes");
            let pb: Vec<bool> = p.iter().map(yes).collect();
            let tb: Vec<bool> = t.iter().map(yes).collect();
            ("binary", binary_metrics(&pb, &tb)?)
        } else {
            ("multilabel", multilabel_metrics(&p, &t)?)
        };
        out.push(CategoryMetrics {
            category: category.clone(),
            kind,
            metrics,
        });
    }
    Ok(out)
}

/// `category,kind,precision,recall,f1,accuracy,avg_jaccard`; the last cell
/// is empty for yes/no categories.
pub fn metrics_to_csv(rows: &[CategoryMetrics]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "category",
        "kind",
        "precision",
        "recall",
        "f1",
        "accuracy",
        "avg_jaccard",
    ])
    .expect("in-memory write");
    for r in rows {
        let m = &r.metrics;
        w.write_record([
            r.category.clone(),
            r.kind.to_string(),
            format!("{:.4}", m.precision),
            format!("{:.4}", m.recall),
            format!("{:.4}", m.f1),
            format!("{:.4}", m.accuracy),
            m.avg_jaccard.map(|j| format!("{j:.4}")).unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}
