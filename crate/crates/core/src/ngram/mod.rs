//! Smoothed n-gram language models, sample-wise perplexity, and style
//! discrimination by comparing the perplexities of two models.

mod model;
mod persist;
mod vocab;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use model::{
    train, NgramModel, NgramTrainer, Smoothing, TrainConfig, DEFAULT_DISCOUNT,
    DEFAULT_MIN_VOCAB_COUNT, DEFAULT_ORDER, MAX_ORDER,
};
pub use persist::{FORMAT_VERSION, MAGIC};
pub use vocab::{Vocab, VocabBuilder, BOS, BOS_ID, EOS, EOS_ID, UNK, UNK_ID};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePerplexity {
    pub sample_id: String,
    pub ppl: f64,
    pub token_count: usize,
}

/// Per-sample perplexities and their arithmetic mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerplexityResult {
    pub model_id: String,
    pub mean_ppl: f64,
    pub per_sample: Vec<SamplePerplexity>,
}

/// Scores every sample separately and averages the perplexities (not the
/// log-likelihoods). Samples are scored in parallel; the mean is summed in
/// input order.
pub fn corpus_perplexity<S>(
    model: &NgramModel,
    samples: &[(String, Vec<S>)],
) -> Result<PerplexityResult>
where
    S: AsRef<str> + Sync,
{
    if samples.is_empty() {
        return Err(Error::Evaluation("no samples to score".into()));
    }
    let per_sample = samples
        .par_iter()
        .map(|(id, tokens)| {
            let ppl = model
                .perplexity(tokens)
                .map_err(|_| Error::Evaluation(format!("sample {id:?} is empty")))?;
            Ok(SamplePerplexity {
                sample_id: id.clone(),
                ppl,
                token_count: tokens.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mean_ppl = per_sample.iter().map(|s| s.ppl).sum::<f64>() / per_sample.len() as f64;
    Ok(PerplexityResult {
        model_id: model.fingerprint(),
        mean_ppl,
        per_sample,
    })
}

/// Perplexity with all tokens of all samples pooled into one average.
pub fn pooled_perplexity<S: AsRef<str>>(model: &NgramModel, samples: &[Vec<S>]) -> Result<f64> {
    let mut log_prob = 0.0;
    let mut positions = 0usize;
    for tokens in samples {
        if tokens.is_empty() {
            return Err(Error::Evaluation("cannot score an empty sample".into()));
        }
        log_prob += model.sequence_log_prob(tokens);
        positions += tokens.len() + 1;
    }
    if positions == 0 {
        return Err(Error::Evaluation("no samples to score".into()));
    }
    Ok((-log_prob / positions as f64).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StyleLabel {
    Easy,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discrimination {
    pub label: StyleLabel,
    pub easy_ppl: f64,
    pub normal_ppl: f64,
}

/// Labels `tokens` as easy when the easy-style model is strictly more
/// confident (lower perplexity) than the normal-style model; ties are normal.
pub fn style_discriminate<S: AsRef<str>>(
    easy_model: &NgramModel,
    normal_model: &NgramModel,
    tokens: &[S],
) -> Result<Discrimination> {
    let easy_ppl = easy_model.perplexity(tokens)?;
    let normal_ppl = normal_model.perplexity(tokens)?;
    let label = if easy_ppl < normal_ppl {
        StyleLabel::Easy
    } else {
        StyleLabel::Normal
    };
    Ok(Discrimination {
        label,
        easy_ppl,
        normal_ppl,
    })
}
