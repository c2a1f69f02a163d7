use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

/// Lowercased alphanumeric runs followed by the bigrams of adjacent runs.
/// Stopwords are kept.
pub fn tokenize(text: &str) -> Vec<String> {
    let words: Vec<String> = text
        .to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_string)
        .collect();
    let bigrams: Vec<String> = words.windows(2).map(|w| format!("{} {}", w[0], w[1])).collect();
    let mut out = words;
    out.extend(bigrams);
    out
}

fn is_unigram(token: &str) -> bool {
    !token.contains(' ')
}

/// Class-based TF-IDF: `W(t, c) = tf(t, c) * ln(1 + A / f(t))`, where `tf`
/// counts `t` in cluster `c`, `f` counts it across all clusters and `A` is
/// the mean number of unigram tokens per cluster. Returns the `top_k`
/// heaviest terms of each cluster, ties in lexicographic order.
pub fn ctfidf(clusters: &BTreeMap<String, Vec<Vec<String>>>, top_k: usize) -> BTreeMap<String, Vec<(String, f64)>> {
    let mut tf: BTreeMap<&str, HashMap<&str, usize>> = BTreeMap::new();
    let mut f: HashMap<&str, usize> = HashMap::new();
    let mut unigrams = 0usize;
    for (cluster, docs) in clusters {
        let counts = tf.entry(cluster.as_str()).or_default();
        for token in docs.iter().flatten() {
            *counts.entry(token.as_str()).or_default() += 1;
            *f.entry(token.as_str()).or_default() += 1;
            if is_unigram(token) {
                unigrams += 1;
            }
        }
    }
    let a = if clusters.is_empty() {
        0.0
    } else {
        unigrams as f64 / clusters.len() as f64
    };
    tf.into_iter()
        .map(|(cluster, counts)| {
            let mut weighted: Vec<(String, f64)> = counts
                .into_iter()
                .map(|(t, n)| (t.to_string(), n as f64 * (1.0 + a / f[t] as f64).ln()))
                .collect();
            weighted.sort_by(|x, y| {
                y.1.partial_cmp(&x.1)
                    .unwrap_or(Ordering::Equal)
                    .then_with(|| x.0.cmp(&y.0))
            });
            weighted.truncate(top_k);
            (cluster.to_string(), weighted)
        })
        .collect()
}
