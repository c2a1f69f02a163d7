//! Metadata enrichment over precomputed embeddings: anchor assignment by
//! cosine similarity, coverage analysis, nearest-anchor clusters labelled by
//! class-based TF-IDF, extraction schemas and evaluation metrics.

mod ctfidf;
mod io;
mod metrics;
mod schema;
mod similarity;

pub use ctfidf::{ctfidf, tokenize};
pub use io::{
    evaluate_tables, evaluate_tables_multilabel, metrics_to_csv, read_anchors_jsonl, read_docs_jsonl, write_docs_jsonl,
    CategoryMetrics, LabelTable,
};
pub use metrics::{binary_metrics, multilabel_metrics, MetricsRow};
pub use schema::{
    parse_llm_response, parse_schema, render_system_prompt, AllowedAnswers, ExtractionSchema, ResponseRow,
    ResponseWarning, SchemaEntry, SYSTEM_PROMPT_TEMPLATE,
};
pub use similarity::{
    assign, cosine, coverage_curve, nearest_anchor_clusters, threshold_for_coverage, top1_scores, AnchorCluster,
    Assignment, Clusters, LabelScore,
};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EnrichError {
    #[error("vector '{0}' has zero norm")]
    ZeroNorm(String),
    #[error("dimension mismatch: expected {expected}, '{id}' has {found}")]
    DimensionMismatch { id: String, expected: usize, found: usize },
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("no anchors")]
    NoAnchors,
    #[error("length mismatch: {0} predictions, {1} ground truth rows")]
    LengthMismatch(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("duplicate identifier '{0}'")]
    Duplicate(String),
    #[error("schema format: {0}")]
    SchemaFormat(String),
    #[error("response is not a JSON object: {0}")]
    ResponseNotJson(String),
    #[error("line {line}: {message}")]
    Jsonl { line: usize, message: String },
    #[error("csv: {0}")]
    Csv(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocVector {
    pub id: String,
    pub vector: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Anchor {
    pub id: String,
    pub label: String,
    pub vector: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AssignmentParams {
    pub threshold: f64,
    pub margin: f64,
    pub max_labels: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coverage_target: Option<f64>,
}

impl Default for AssignmentParams {
    fn default() -> Self {
        Self {
            threshold: 0.3,
            margin: 0.03,
            max_labels: 2,
            coverage_target: None,
        }
    }
}

impl AssignmentParams {
    pub fn validate(&self) -> Result<(), EnrichError> {
        if !(-1.0..=1.0).contains(&self.threshold) {
            return Err(EnrichError::InvalidParams(format!(
                "threshold {} outside [-1, 1]",
                self.threshold
            )));
        }
        if self.margin.is_nan() || self.margin < 0.0 {
            return Err(EnrichError::InvalidParams(format!(
                "margin {} is negative",
                self.margin
            )));
        }
        if self.max_labels == 0 {
            return Err(EnrichError::InvalidParams("max_labels must be at least 1".into()));
        }
        if let Some(t) = self.coverage_target {
            if !(t > 0.0 && t <= 1.0) {
                return Err(EnrichError::InvalidParams(format!(
                    "coverage target {t} outside (0, 1]"
                )));
            }
        }
        Ok(())
    }
}

/// Concatenated text in the form embedded for each document.
pub fn document_text(title: &str, abstract_text: &str) -> String {
    format!("Title: {title}\n Abstract: {abstract_text}")
}
