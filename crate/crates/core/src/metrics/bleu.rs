use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{extract_ngrams, EvalInstance};

pub const BLEU_MAX_ORDER: usize = 4;
/// Stand-in numerator for orders without any clipped match.
pub const BLEU_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BleuScore {
    /// Corpus BLEU on a 0-100 scale.
    pub bleu: f64,
    /// Smoothed modified precisions for n = 1..4.
    pub bleu_precisions: Vec<f64>,
    pub brevity_penalty: f64,
    pub hypothesis_length: usize,
    pub reference_length: usize,
}

impl BleuScore {
    /// Recomputes BLEU from the stored precisions and brevity penalty.
    ///
    /// Orders for which the hypotheses contain no n-gram at all are left
    /// out of the geometric mean; they are reported with precision 0.
    pub fn recompute(&self) -> f64 {
        let used: Vec<f64> = self
            .bleu_precisions
            .iter()
            .copied()
            .filter(|&p| p > 0.0)
            .collect();
        if used.is_empty() {
            return 0.0;
        }
        let log_mean = used.iter().map(|p| p.ln()).sum::<f64>() / used.len() as f64;
        100.0 * self.brevity_penalty * log_mean.exp()
    }
}

/// Corpus-level sufficient statistics: integer counts only, so the result is
/// independent of instance order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BleuStats {
    pub matches: [u64; BLEU_MAX_ORDER],
    pub totals: [u64; BLEU_MAX_ORDER],
    pub hypothesis_length: usize,
    pub reference_length: usize,
}

impl BleuStats {
    pub fn add(&mut self, inst: &EvalInstance) {
        let hyp = &inst.hypothesis;
        for n in 1..=BLEU_MAX_ORDER {
            let hyp_grams = extract_ngrams(hyp, n);
            let mut max_ref: HashMap<&[String], usize> = HashMap::new();
            for r in &inst.references {
                for (g, c) in extract_ngrams(r, n) {
                    let e = max_ref.entry(g).or_insert(0);
                    *e = (*e).max(c);
                }
            }
            let clipped: usize = hyp_grams
                .iter()
                .map(|(g, &c)| c.min(max_ref.get(g).copied().unwrap_or(0)))
                .sum();
            self.matches[n - 1] += clipped as u64;
            self.totals[n - 1] += hyp.len().saturating_sub(n - 1) as u64;
        }
        self.hypothesis_length += hyp.len();
        self.reference_length += closest_ref_len(hyp.len(), &inst.references);
    }

    pub fn score(&self) -> BleuScore {
        let c = self.hypothesis_length;
        let r = self.reference_length;
        if c == 0 {
            return BleuScore {
                bleu: 0.0,
                bleu_precisions: vec![0.0; BLEU_MAX_ORDER],
                brevity_penalty: 0.0,
                hypothesis_length: c,
                reference_length: r,
            };
        }
        let precisions: Vec<f64> = (0..BLEU_MAX_ORDER)
            .map(|i| {
                if self.totals[i] == 0 {
                    0.0
                } else if self.matches[i] == 0 {
                    BLEU_EPSILON / self.totals[i] as f64
                } else {
                    self.matches[i] as f64 / self.totals[i] as f64
                }
            })
            .collect();
        let brevity_penalty = if c < r {
            (1.0 - r as f64 / c as f64).exp()
        } else {
            1.0
        };
        let mut score = BleuScore {
            bleu: 0.0,
            bleu_precisions: precisions,
            brevity_penalty,
            hypothesis_length: c,
            reference_length: r,
        };
        score.bleu = score.recompute();
        score
    }
}

/// Length of the reference closest to `hyp_len`, shorter wins ties.
fn closest_ref_len(hyp_len: usize, refs: &[Vec<String>]) -> usize {
    refs.iter()
        .map(Vec::len)
        .min_by_key(|&len| (len.abs_diff(hyp_len), len))
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::super::bleu as corpus_bleu;
    use super::*;

    fn inst(hyp: &str, refs: &[&str]) -> EvalInstance {
        EvalInstance::from_text(hyp, hyp, refs).unwrap()
    }

    #[test]
    fn closest_reference_prefers_shorter_on_tie() {
        let refs = vec![vec!["a".to_string(); 3], vec!["a".to_string(); 5]];
        assert_eq!(closest_ref_len(4, &refs), 3);
        assert_eq!(closest_ref_len(5, &refs), 5);
    }

    #[test]
    fn perfect_match_short_sentences() {
        let s = corpus_bleu(&[inst("a b", &["a b"]), inst("c", &["c"])]).unwrap();
        assert_eq!(s.bleu, 100.0);
        assert_eq!(s.bleu_precisions, [1.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn empty_hypotheses_score_zero() {
        let s = corpus_bleu(&[inst("", &["a b"])]).unwrap();
        assert_eq!(s.bleu, 0.0);
    }

    #[test]
    fn clipping() {
        let s = corpus_bleu(&[inst("der der der", &["der hund"])]).unwrap();
        assert_eq!(s.bleu_precisions[0], 1.0 / 3.0);
    }
}
