use serde::{Deserialize, Serialize};

use super::{order_independent_mean, EvalInstance};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RougeLScore {
    #[serde(rename = "rouge_l_precision")]
    pub precision: f64,
    #[serde(rename = "rouge_l_recall")]
    pub recall: f64,
    #[serde(rename = "rouge_l_f1")]
    pub f1: f64,
}

impl RougeLScore {
    pub const ZERO: RougeLScore = RougeLScore {
        precision: 0.0,
        recall: 0.0,
        f1: 0.0,
    };

    fn from_lcs(lcs: usize, hyp_len: usize, ref_len: usize) -> Self {
        let precision = if hyp_len == 0 {
            0.0
        } else {
            lcs as f64 / hyp_len as f64
        };
        let recall = if ref_len == 0 {
            0.0
        } else {
            lcs as f64 / ref_len as f64
        };
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Self {
            precision,
            recall,
            f1,
        }
    }

    /// Macro average of each component.
    pub fn mean(scores: &[RougeLScore]) -> Self {
        Self {
            precision: order_independent_mean(scores.iter().map(|s| s.precision).collect()),
            recall: order_independent_mean(scores.iter().map(|s| s.recall).collect()),
            f1: order_independent_mean(scores.iter().map(|s| s.f1).collect()),
        }
    }
}

/// Length of the longest common subsequence, O(|a|·|b|) time, O(|b|) space.
pub fn lcs_len<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut curr = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            curr[j + 1] = if x == y {
                prev[j] + 1
            } else {
                prev[j + 1].max(curr[j])
            };
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[b.len()]
}

/// ROUGE-L of one instance against its best reference (highest F1, first
/// reference on ties).
pub fn rouge_l_instance(inst: &EvalInstance) -> RougeLScore {
    let hyp = &inst.hypothesis;
    inst.references
        .iter()
        .map(|r| RougeLScore::from_lcs(lcs_len(hyp, r), hyp.len(), r.len()))
        .fold(None, |best: Option<RougeLScore>, s| match best {
            Some(b) if b.f1 >= s.f1 => Some(b),
            _ => Some(s),
        })
        .unwrap_or(RougeLScore::ZERO)
}
