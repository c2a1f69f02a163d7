use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;

use super::*;

/// `dot(u, v) / (|u| |v|)`, clamped to [-1, 1] against rounding.
pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64, EnrichError> {
    if u.len() != v.len() {
        return Err(EnrichError::DimensionMismatch {
            id: String::new(),
            expected: u.len(),
            found: v.len(),
        });
    }
    let (nu, nv) = (norm(u), norm(v));
    if nu == 0.0 {
        return Err(EnrichError::ZeroNorm("left operand".into()));
    }
    if nv == 0.0 {
        return Err(EnrichError::ZeroNorm("right operand".into()));
    }
    Ok(cosine_with_norms(u, nu, v, nv))
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn cosine_with_norms(u: &[f64], nu: f64, v: &[f64], nv: f64) -> f64 {
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    (dot / (nu * nv)).clamp(-1.0, 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelScore {
    pub anchor_id: String,
    pub similarity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assignment {
    pub doc_id: String,
    /// Descending by similarity, ties by anchor id.
    pub labels: Vec<LabelScore>,
    pub top1: f64,
    /// `top1 - top2`; absent with a single anchor.
    pub margin: Option<f64>,
}

/// Anchors with precomputed norms; checks dimensions and zero vectors once.
struct Scorer<'a> {
    anchors: Vec<(&'a Anchor, f64)>,
    dim: usize,
}

impl<'a> Scorer<'a> {
    fn new(anchors: &'a [Anchor]) -> Result<Self, EnrichError> {
        let first = anchors.first().ok_or(EnrichError::NoAnchors)?;
        let dim = first.vector.len();
        let (mut ids, mut labels) = (HashSet::new(), HashSet::new());
        let mut out = Vec::with_capacity(anchors.len());
        for a in anchors {
            if !ids.insert(a.id.as_str()) {
                return Err(EnrichError::Duplicate(a.id.clone()));
            }
            if !labels.insert(a.label.as_str()) {
                return Err(EnrichError::Duplicate(a.label.clone()));
            }
            check_vector(&a.id, &a.vector, dim)?;
            out.push((a, norm(&a.vector)));
        }
        Ok(Self { anchors: out, dim })
    }

    /// All anchor similarities, descending, ties by anchor id.
    fn ranked(&self, doc: &DocVector) -> Result<Vec<(&'a str, f64)>, EnrichError> {
        check_vector(&doc.id, &doc.vector, self.dim)?;
        let nd = norm(&doc.vector);
        let mut sims: Vec<(&str, f64)> = self
            .anchors
            .iter()
            .map(|(a, na)| (a.id.as_str(), cosine_with_norms(&doc.vector, nd, &a.vector, *na)))
            .collect();
        sims.sort_by(|a, b| {
            b.1.partial_cmp(&a.1)
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.0.cmp(b.0))
        });
        Ok(sims)
    }
}

fn check_vector(id: &str, v: &[f64], dim: usize) -> Result<(), EnrichError> {
    if v.len() != dim {
        return Err(EnrichError::DimensionMismatch {
            id: id.to_string(),
            expected: dim,
            found: v.len(),
        });
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(EnrichError::InvalidParams(format!(
            "vector '{id}' has a non-finite component"
        )));
    }
    if norm(v) == 0.0 {
        return Err(EnrichError::ZeroNorm(id.to_string()));
    }
    Ok(())
}

/// Labels each document with the anchors whose similarity is at least the
/// threshold and within the margin of the best one, up to `max_labels`.
pub fn assign(
    docs: &[DocVector],
    anchors: &[Anchor],
    params: &AssignmentParams,
) -> Result<Vec<Assignment>, EnrichError> {
    params.validate()?;
    let scorer = Scorer::new(anchors)?;
    let mut out = Vec::with_capacity(docs.len());
    for doc in docs {
        let ranked = scorer.ranked(doc)?;
        let top1 = ranked[0].1;
        let margin = ranked.get(1).map(|r| top1 - r.1);
        let mut labels = Vec::new();
        if top1 >= params.threshold {
            for (id, sim) in &ranked {
                if top1 - sim > params.margin || *sim < params.threshold || labels.len() >= params.max_labels {
                    break;
                }
                labels.push(LabelScore {
                    anchor_id: id.to_string(),
                    similarity: *sim,
                });
            }
        }
        out.push(Assignment {
            doc_id: doc.id.clone(),
            labels,
            top1,
            margin,
        });
    }
    out.sort_by(|a, b| a.doc_id.cmp(&b.doc_id));
    Ok(out)
}

/// Best anchor similarity per document, in input order.
pub fn top1_scores(docs: &[DocVector], anchors: &[Anchor]) -> Result<Vec<f64>, EnrichError> {
    let scorer = Scorer::new(anchors)?;
    docs.iter().map(|d| Ok(scorer.ranked(d)?[0].1)).collect()
}

fn coverage(top1: &[f64], threshold: f64) -> f64 {
    if top1.is_empty() {
        return 0.0;
    }
    top1.iter().filter(|t| **t >= threshold).count() as f64 / top1.len() as f64
}

/// Fraction of documents whose best similarity reaches each threshold.
pub fn coverage_curve(
    docs: &[DocVector],
    anchors: &[Anchor],
    thresholds: &[f64],
) -> Result<Vec<(f64, f64)>, EnrichError> {
    if thresholds.windows(2).any(|w| w[0] > w[1]) {
        return Err(EnrichError::InvalidParams("thresholds must be sorted ascending".into()));
    }
    let top1 = top1_scores(docs, anchors)?;
    Ok(thresholds.iter().map(|t| (*t, coverage(&top1, *t))).collect())
}

/// Largest threshold among the observed best similarities (and -1) whose
/// coverage still reaches `target`.
pub fn threshold_for_coverage(docs: &[DocVector], anchors: &[Anchor], target: f64) -> Result<f64, EnrichError> {
    if !(target > 0.0 && target <= 1.0) {
        return Err(EnrichError::InvalidParams(format!(
            "coverage target {target} outside (0, 1]"
        )));
    }
    if docs.is_empty() {
        return Err(EnrichError::EmptyCorpus);
    }
    let top1 = top1_scores(docs, anchors)?;
    let mut best = -1.0;
    for &t in &top1 {
        if t > best && coverage(&top1, t) >= target {
            best = t;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnchorCluster {
    pub anchor_id: String,
    pub label: String,
    pub n_docs: usize,
    /// Sorted.
    pub member_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Clusters {
    /// One per anchor, largest first, ties by anchor id.
    pub clusters: Vec<AnchorCluster>,
    /// Documents whose best similarity is below the threshold, sorted.
    pub noise: Vec<String>,
}

/// Puts each document in the cluster of its most similar anchor, or in the
/// noise bucket when that similarity is below `threshold`.
pub fn nearest_anchor_clusters(
    docs: &[DocVector],
    anchors: &[Anchor],
    threshold: f64,
) -> Result<Clusters, EnrichError> {
    let scorer = Scorer::new(anchors)?;
    let mut clusters: Vec<AnchorCluster> = anchors
        .iter()
        .map(|a| AnchorCluster {
            anchor_id: a.id.clone(),
            label: a.label.clone(),
            n_docs: 0,
            member_ids: Vec::new(),
        })
        .collect();
    let mut noise = Vec::new();
    for doc in docs {
        let (best, sim) = scorer.ranked(doc)?[0];
        if sim >= threshold {
            let c = clusters
                .iter_mut()
                .find(|c| c.anchor_id == best)
                .expect("ranked ids come from anchors");
            c.member_ids.push(doc.id.clone());
        } else {
            noise.push(doc.id.clone());
        }
    }
    for c in &mut clusters {
        c.member_ids.sort();
        c.n_docs = c.member_ids.len();
    }
    clusters.sort_by(|a, b| b.n_docs.cmp(&a.n_docs).then_with(|| a.anchor_id.cmp(&b.anchor_id)));
    noise.sort();
    Ok(Clusters { clusters, noise })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(id: &str, v: &[f64]) -> DocVector {
        DocVector {
            id: id.into(),
            vector: v.to_vec(),
            text: None,
        }
    }

    fn anchor(id: &str, v: &[f64]) -> Anchor {
        Anchor {
            id: id.into(),
            label: id.to_lowercase(),
            vector: v.to_vec(),
        }
    }

    #[test]
    fn cosine_cases() {
        assert!((cosine(&[3.0, -4.0], &[3.0, -4.0]).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(cosine(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        // 0.71 / sqrt(0.71^2 + 0.70^2)
        let oracle = 0.71 / (0.71f64 * 0.71 + 0.70 * 0.70).sqrt();
        let c = cosine(&[0.71, 0.70], &[1.0, 0.0]).unwrap();
        assert!((c - oracle).abs() < 1e-12 && (c - 0.7121).abs() < 1e-3);
        assert!(matches!(
            cosine(&[0.0, 0.0], &[1.0, 0.0]),
            Err(EnrichError::ZeroNorm(_))
        ));
        assert!(matches!(
            cosine(&[1.0], &[1.0, 0.0]),
            Err(EnrichError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn assign_examples() {
        let p = AssignmentParams::default();
        let anchors = [anchor("G1", &[1.0, 0.0]), anchor("G2", &[0.0, 1.0])];
        let a = assign(&[doc("d", &[0.71, 0.70])], &anchors, &p).unwrap();
        let ids: Vec<_> = a[0].labels.iter().map(|l| l.anchor_id.as_str()).collect();
        assert_eq!(ids, ["G1", "G2"]);
        assert!((a[0].margin.unwrap() - 0.0100).abs() < 1e-3);

        let four = [
            anchor("G1", &[1.0, 0.0, 0.0, 0.0]),
            anchor("G2", &[0.0, 1.0, 0.0, 0.0]),
            anchor("G3", &[0.0, 0.0, 1.0, 0.0]),
            anchor("G4", &[0.5, 0.5, 0.5, 0.5]),
        ];
        let a = assign(&[doc("d", &[1.0, 0.0, 0.0, 0.0])], &four, &p).unwrap();
        assert_eq!(
            a[0].labels,
            [LabelScore {
                anchor_id: "G1".into(),
                similarity: 1.0
            }]
        );

        let a = assign(&[doc("d", &[1.0, 0.0])], &[anchor("A", &[0.0, 1.0])], &p).unwrap();
        assert!(a[0].labels.is_empty());
        assert_eq!(a[0].margin, None);
    }

    #[test]
    fn ties_break_on_anchor_id() {
        let anchors = [
            anchor("b", &[1.0, 0.0]),
            anchor("a", &[1.0, 0.0]),
            anchor("c", &[1.0, 0.0]),
        ];
        let a = assign(&[doc("d", &[1.0, 0.0])], &anchors, &AssignmentParams::default()).unwrap();
        let ids: Vec<_> = a[0].labels.iter().map(|l| l.anchor_id.as_str()).collect();
        assert_eq!(ids, ["a", "b"]);
        let c = nearest_anchor_clusters(&[doc("d", &[1.0, 0.0])], &anchors, 0.3).unwrap();
        assert_eq!(c.clusters[0].anchor_id, "a");
    }

    #[test]
    fn coverage_and_threshold() {
        let anchors = [anchor("A", &[1.0, 0.0])];
        // top1 values 0.2, 0.5, 0.9 by construction: (t, sqrt(1 - t^2))
        let docs: Vec<_> = [0.2f64, 0.5, 0.9]
            .iter()
            .enumerate()
            .map(|(i, t)| doc(&format!("d{i}"), &[*t, (1.0 - t * t).sqrt()]))
            .collect();
        let tau = threshold_for_coverage(&docs, &anchors, 0.66).unwrap();
        assert!((tau - 0.5).abs() < 1e-12);
        let min = threshold_for_coverage(&docs, &anchors, 1.0).unwrap();
        assert!((min - 0.2).abs() < 1e-12);
        let curve = coverage_curve(&docs, &anchors, &[-1.0, 0.5, 0.9000001]).unwrap();
        assert_eq!(curve[0].1, 1.0);
        assert!((curve[1].1 - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(curve[2].1, 0.0);
        assert!(matches!(
            threshold_for_coverage(&[], &anchors, 0.5),
            Err(EnrichError::EmptyCorpus)
        ));
        assert!(coverage_curve(&docs, &anchors, &[0.5, 0.1]).is_err());
    }

    #[test]
    fn clusters_and_noise() {
        let anchors = [anchor("A", &[1.0, 0.0]), anchor("B", &[0.0, 1.0])];
        let docs = [doc("x", &[1.0, 0.0]), doc("y", &[2.0, 0.0]), doc("z", &[-1.0, -1.0])];
        let c = nearest_anchor_clusters(&docs, &anchors, 0.3).unwrap();
        assert_eq!(c.clusters[0].member_ids, ["x", "y"]);
        assert_eq!(c.clusters[1].n_docs, 0);
        assert_eq!(c.noise, ["z"]);
    }

    #[test]
    fn rejects_bad_input() {
        let anchors = [anchor("A", &[1.0, 0.0])];
        assert!(matches!(
            assign(&[doc("d", &[1.0])], &anchors, &AssignmentParams::default()),
            Err(EnrichError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            assign(&[], &[], &AssignmentParams::default()),
            Err(EnrichError::NoAnchors)
        ));
        let p = AssignmentParams {
            max_labels: 0,
            ..Default::default()
        };
        assert!(assign(&[], &anchors, &p).is_err());
        let dup = [anchor("A", &[1.0, 0.0]), anchor("A", &[0.0, 1.0])];
        assert!(matches!(
            assign(&[], &dup, &AssignmentParams::default()),
            Err(EnrichError::Duplicate(_))
        ));
    }
}
