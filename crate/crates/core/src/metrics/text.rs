use std::collections::HashMap;

use super::MetricError;

fn ngrams<'a>(tokens: &'a [&'a str], n: usize) -> HashMap<&'a [&'a str], usize> {
    let mut counts = HashMap::new();
    if n > 0 && tokens.len() >= n {
        for gram in tokens.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

fn clipped_overlap(cand: &HashMap<&[&str], usize>, refs: &HashMap<&[&str], usize>) -> usize {
    cand.iter()
        .map(|(gram, &c)| c.min(refs.get(gram).copied().unwrap_or(0)))
        .sum()
}

const EPSILON: f64 = 1e-9;

/// Corpus-level BLEU-4 with one reference per candidate, uniform weights
/// and brevity penalty. Tokens are whitespace-separated and case-sensitive.
/// An n-gram order with no matches gets precision `1e-9 / total`, which
/// keeps the score finite but negligible. Counting follows NLTK's
/// `corpus_bleu`, where a candidate too short for an order still adds one
/// to that order's denominator.
pub fn bleu4(candidates: &[&str], references: &[&str]) -> Result<f64, MetricError> {
    if candidates.len() != references.len() {
        return Err(MetricError::LengthMismatch {
            candidates: candidates.len(),
            references: references.len(),
        });
    }
    let mut matches = [0usize; 4];
    let mut totals = [0usize; 4];
    let (mut c, mut r) = (0usize, 0usize);
    for (cand, reference) in candidates.iter().zip(references) {
        let cand: Vec<&str> = cand.split_whitespace().collect();
        let reference: Vec<&str> = reference.split_whitespace().collect();
        c += cand.len();
        r += reference.len();
        for n in 1..=4 {
            let cand_grams = ngrams(&cand, n);
            matches[n - 1] += clipped_overlap(&cand_grams, &ngrams(&reference, n));
            // each sentence contributes at least 1 to the denominator
            totals[n - 1] += cand.len().saturating_sub(n - 1).max(1);
        }
    }
    if c == 0 {
        return Ok(if r == 0 { 1.0 } else { 0.0 });
    }
    if matches[0] == 0 {
        return Ok(0.0);
    }
    let log_precision: f64 = (0..4)
        .map(|i| {
            let denom = totals[i] as f64;
            let num = if matches[i] == 0 { EPSILON } else { matches[i] as f64 };
            0.25 * (num / denom).ln()
        })
        .sum();
    let bp = if c > r { 1.0 } else { (1.0 - r as f64 / c as f64).exp() };
    Ok(bp * log_precision.exp())
}

/// ROUGE-n F1 over lowercased whitespace tokens with clipped n-gram counts.
/// When neither text has an n-gram of that order, the score is 1 if the
/// token sequences are equal and 0 otherwise.
pub fn rouge_n_f1(candidate: &str, reference: &str, n: usize) -> f64 {
    assert!(n >= 1, "ROUGE order must be at least 1");
    let cand_lower = candidate.to_lowercase();
    let ref_lower = reference.to_lowercase();
    let cand: Vec<&str> = cand_lower.split_whitespace().collect();
    let reference: Vec<&str> = ref_lower.split_whitespace().collect();
    let cand_grams = ngrams(&cand, n);
    let ref_grams = ngrams(&reference, n);
    let cand_total: usize = cand_grams.values().sum();
    let ref_total: usize = ref_grams.values().sum();
    if cand_total == 0 && ref_total == 0 {
        return if cand == reference { 1.0 } else { 0.0 };
    }
    let overlap = clipped_overlap(&cand_grams, &ref_grams);
    if overlap == 0 {
        return 0.0;
    }
    let precision = overlap as f64 / cand_total as f64;
    let recall = overlap as f64 / ref_total as f64;
    2.0 * precision * recall / (precision + recall)
}
