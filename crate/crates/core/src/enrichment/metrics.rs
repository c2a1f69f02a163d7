use std::collections::BTreeSet;

use serde::Serialize;

use super::EnrichError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricsRow {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub accuracy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub avg_jaccard: Option<f64>,
}

fn f1(p: f64, r: f64) -> f64 {
    if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn check_lengths(a: usize, b: usize) -> Result<(), EnrichError> {
    if a != b || a == 0 {
        return Err(EnrichError::LengthMismatch(a, b));
    }
    Ok(())
}

/// Precision, recall, F1 and accuracy of yes/no predictions, with `true`
/// as the positive class. Empty denominators give 0.
pub fn binary_metrics(pred: &[bool], truth: &[bool]) -> Result<MetricsRow, EnrichError> {
    check_lengths(pred.len(), truth.len())?;
    let (mut tp, mut fp, mut fneg, mut tn) = (0, 0, 0, 0);
    for (p, t) in pred.iter().zip(truth) {
        match (p, t) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fneg += 1,
            (false, false) => tn += 1,
        }
    }
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fneg);
    Ok(MetricsRow {
        precision,
        recall,
        f1: f1(precision, recall),
        accuracy: ratio(tp + tn, pred.len()),
        avg_jaccard: None,
    })
}

/// Per-document set precision, recall and Jaccard, averaged over documents.
/// Two empty sets score 1 on all three; an empty side otherwise scores 0.
/// Accuracy is the fraction of exact matches; F1 uses the averaged P and R.
pub fn multilabel_metrics(pred: &[BTreeSet<String>], truth: &[BTreeSet<String>]) -> Result<MetricsRow, EnrichError> {
    check_lengths(pred.len(), truth.len())?;
    let (mut p_sum, mut r_sum, mut j_sum, mut exact) = (0.0, 0.0, 0.0, 0);
    for (p, t) in pred.iter().zip(truth) {
        if p == t {
            exact += 1;
        }
        if p.is_empty() && t.is_empty() {
            p_sum += 1.0;
            r_sum += 1.0;
            j_sum += 1.0;
            continue;
        }
        let inter = p.intersection(t).count();
        let union = p.union(t).count();
        p_sum += ratio(inter, p.len());
        r_sum += ratio(inter, t.len());
        j_sum += ratio(inter, union);
    }
    let n = pred.len() as f64;
    let (precision, recall) = (p_sum / n, r_sum / n);
    Ok(MetricsRow {
        precision,
        recall,
        f1: f1(precision, recall),
        accuracy: exact as f64 / n,
        avg_jaccard: Some(j_sum / n),
    })
}
