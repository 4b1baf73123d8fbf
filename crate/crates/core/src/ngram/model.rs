use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::vocab::{Vocab, VocabBuilder, BOS_ID, EOS_ID};
use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 5;
pub const DEFAULT_ORDER: usize = 3;
pub const DEFAULT_DISCOUNT: f64 = 0.75;
pub const DEFAULT_MIN_VOCAB_COUNT: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Smoothing {
    /// Interpolated Witten-Bell.
    WittenBell,
    /// Interpolated Kneser-Ney with a single absolute discount in `(0, 1)`.
    KneserNey { discount: f64 },
}

impl Default for Smoothing {
    fn default() -> Self {
        Smoothing::KneserNey {
            discount: DEFAULT_DISCOUNT,
        }
    }
}

impl Smoothing {
    fn validate(&self) -> Result<()> {
        match *self {
            Smoothing::WittenBell => Ok(()),
            Smoothing::KneserNey { discount } if discount > 0.0 && discount < 1.0 => Ok(()),
            Smoothing::KneserNey { discount } => Err(Error::Config(format!(
                "Kneser-Ney discount must lie in (0, 1), got {discount}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub order: usize,
    pub smoothing: Smoothing,
    pub min_vocab_count: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            order: DEFAULT_ORDER,
            smoothing: Smoothing::default(),
            min_vocab_count: DEFAULT_MIN_VOCAB_COUNT,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_ORDER).contains(&self.order) {
            return Err(Error::Config(format!(
                "order must be in 1..={MAX_ORDER}, got {}",
                self.order
            )));
        }
        self.smoothing.validate()
    }
}

/// Successor counts of one context.
pub(crate) type Successors = HashMap<u32, u64>;
/// Context (ids, length `k - 1`) to successor counts, for one order `k`.
pub(crate) type CountTable = HashMap<Vec<u32>, Successors>;

/// Estimation statistics for a context at one order.
#[derive(Debug, Clone)]
struct ContextDist {
    counts: Successors,
    total: u64,
    distinct: u64,
}

impl ContextDist {
    fn from_counts(counts: Successors) -> Option<Self> {
        let total: u64 = counts.values().sum();
        if total == 0 {
            return None;
        }
        let distinct = counts.len() as u64;
        Some(Self {
            counts,
            total,
            distinct,
        })
    }
}

/// Backoff n-gram language model.
///
/// Raw counts are kept for every window of the padded training sequences
/// (`order - 1` leading `<s>`, one trailing `</s>`), which makes the count
/// tables consistent across orders. Estimation never predicts `<s>`.
#[derive(Debug, Clone)]
pub struct NgramModel {
    pub(crate) order: usize,
    pub(crate) vocab: Vocab,
    pub(crate) smoothing: Smoothing,
    pub(crate) trained_tokens: u64,
    /// `counts[k - 1]` holds order-`k` windows.
    pub(crate) counts: Vec<CountTable>,
    tables: Vec<HashMap<Vec<u32>, ContextDist>>,
}

/// Accumulates n-gram counts over a fixed vocabulary.
#[derive(Debug, Clone)]
pub struct NgramTrainer {
    config: TrainConfig,
    vocab: Vocab,
    counts: Vec<CountTable>,
    trained_tokens: u64,
    sequences: u64,
}

impl NgramTrainer {
    pub fn new(config: TrainConfig, vocab: Vocab) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            counts: vec![CountTable::new(); config.order],
            config,
            vocab,
            trained_tokens: 0,
            sequences: 0,
        })
    }

    pub fn add<S: AsRef<str>>(&mut self, tokens: &[S]) {
        let order = self.config.order;
        let mut padded = vec![BOS_ID; order - 1];
        padded.extend(tokens.iter().map(|t| self.vocab.id(t.as_ref())));
        padded.push(EOS_ID);

        for k in 1..=order {
            for window in padded.windows(k) {
                let (context, last) = window.split_at(k - 1);
                *self.counts[k - 1]
                    .entry(context.to_vec())
                    .or_default()
                    .entry(last[0])
                    .or_insert(0) += 1;
            }
        }
        self.trained_tokens += tokens.len() as u64;
        self.sequences += 1;
    }

    pub fn finish(self) -> Result<NgramModel> {
        if self.sequences == 0 {
            return Err(Error::Training("training corpus is empty".into()));
        }
        Ok(NgramModel::from_parts(
            self.config.order,
            self.vocab,
            self.config.smoothing,
            self.trained_tokens,
            self.counts,
        ))
    }
}

/// Trains a model on tokenized sequences.
pub fn train<S: AsRef<str>>(corpus: &[Vec<S>], config: &TrainConfig) -> Result<NgramModel> {
    config.validate()?;
    if corpus.is_empty() {
        return Err(Error::Training("training corpus is empty".into()));
    }
    let mut builder = VocabBuilder::new();
    for seq in corpus {
        builder.add(seq);
    }
    let mut trainer = NgramTrainer::new(*config, builder.build(config.min_vocab_count))?;
    for seq in corpus {
        trainer.add(seq);
    }
    trainer.finish()
}

impl NgramModel {
    pub(crate) fn from_parts(
        order: usize,
        vocab: Vocab,
        smoothing: Smoothing,
        trained_tokens: u64,
        counts: Vec<CountTable>,
    ) -> Self {
        let tables = build_tables(order, smoothing, &counts);
        Self {
            order,
            vocab,
            smoothing,
            trained_tokens,
            counts,
            tables,
        }
    }

    /// A model without counts: every predictable symbol gets `1 / V`.
    pub fn uniform<I, S>(types: I, order: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let config = TrainConfig {
            order,
            smoothing: Smoothing::WittenBell,
            min_vocab_count: 1,
        };
        config.validate()?;
        Ok(Self::from_parts(
            order,
            Vocab::from_types(types),
            Smoothing::WittenBell,
            0,
            vec![CountTable::new(); order],
        ))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vocab(&self) -> &Vocab {
        &self.vocab
    }

    pub fn smoothing(&self) -> Smoothing {
        self.smoothing
    }

    pub fn trained_tokens(&self) -> u64 {
        self.trained_tokens
    }

    /// Raw count of the order-`context.len() + 1` window `context ++ [token]`.
    pub fn count(&self, context: &[u32], token: u32) -> u64 {
        self.counts
            .get(context.len())
            .and_then(|t| t.get(context))
            .and_then(|s| s.get(&token))
            .copied()
            .unwrap_or(0)
    }

    /// Checks that, for every context, the successor counts add up to the
    /// context's own count one order lower.
    pub fn counts_consistent(&self) -> bool {
        for k in 2..=self.order {
            for (context, successors) in &self.counts[k - 1] {
                let total: u64 = successors.values().sum();
                let (head, last) = context.split_at(k - 2);
                if self.count(head, last[0]) != total {
                    return false;
                }
            }
        }
        true
    }

    /// All contexts with counts at the highest order.
    pub fn contexts(&self) -> impl Iterator<Item = &[u32]> {
        self.counts[self.order - 1].keys().map(Vec::as_slice)
    }

    /// `P(token | context)` by id. Only the last `order - 1` ids of
    /// `context` are used; shorter contexts are treated as unseen at the
    /// missing orders.
    pub fn prob_id(&self, context: &[u32], token: u32) -> f64 {
        if token == BOS_ID || token as usize >= self.vocab.len() {
            return 0.0;
        }
        let mut p = 1.0 / self.vocab.predictable_len() as f64;
        for k in 1..=self.order {
            let need = k - 1;
            if context.len() < need {
                break;
            }
            let history = &context[context.len() - need..];
            let Some(dist) = self.tables[k - 1].get(history) else {
                continue;
            };
            let c = dist.counts.get(&token).copied().unwrap_or(0) as f64;
            let total = dist.total as f64;
            let distinct = dist.distinct as f64;
            p = match self.smoothing {
                Smoothing::WittenBell => (c + distinct * p) / (total + distinct),
                Smoothing::KneserNey { discount } => {
                    ((c - discount).max(0.0) + discount * distinct * p) / total
                }
            };
        }
        p
    }

    /// `P(token | context)` by surface form.
    pub fn prob<S: AsRef<str>>(&self, context: &[S], token: &str) -> f64 {
        let ids: Vec<u32> = context.iter().map(|t| self.vocab.id(t.as_ref())).collect();
        self.prob_id(&ids, self.vocab.id(token))
    }

    fn padded_ids<S: AsRef<str>>(&self, tokens: &[S]) -> Vec<u32> {
        let mut ids = vec![BOS_ID; self.order - 1];
        ids.extend(tokens.iter().map(|t| self.vocab.id(t.as_ref())));
        ids
    }

    /// Natural-log probability of the tokens of `tokens`, each conditioned
    /// on its padded history. The end-of-sequence event is not included;
    /// see [`NgramModel::sequence_log_prob`].
    pub fn log_prob<S: AsRef<str>>(&self, tokens: &[S]) -> f64 {
        let ids = self.padded_ids(tokens);
        let start = self.order - 1;
        (start..ids.len())
            .map(|i| self.prob_id(&ids[..i], ids[i]).ln())
            .sum()
    }

    /// Log probability of the whole sequence including the closing `</s>`.
    pub fn sequence_log_prob<S: AsRef<str>>(&self, tokens: &[S]) -> f64 {
        let ids = self.padded_ids(tokens);
        self.log_prob(tokens) + self.prob_id(&ids, EOS_ID).ln()
    }

    /// `exp(-sequence_log_prob / (n + 1))`, counting `</s>` as a predicted
    /// position.
    pub fn perplexity<S: AsRef<str>>(&self, tokens: &[S]) -> Result<f64> {
        if tokens.is_empty() {
            return Err(Error::Evaluation("cannot score an empty sample".into()));
        }
        let n = tokens.len() as f64 + 1.0;
        Ok((-self.sequence_log_prob(tokens) / n).exp())
    }
}

fn build_tables(
    order: usize,
    smoothing: Smoothing,
    counts: &[CountTable],
) -> Vec<HashMap<Vec<u32>, ContextDist>> {
    let mut tables = Vec::with_capacity(order);
    for k in 1..=order {
        let use_continuation = matches!(smoothing, Smoothing::KneserNey { .. }) && k < order;
        let source: CountTable = if use_continuation {
            continuation_counts(&counts[k])
        } else {
            counts[k - 1]
                .iter()
                .map(|(ctx, succ)| {
                    let filtered = succ
                        .iter()
                        .filter(|&(&w, _)| w != BOS_ID)
                        .map(|(&w, &c)| (w, c))
                        .collect();
                    (ctx.clone(), filtered)
                })
                .collect()
        };
        let table = source
            .into_iter()
            .filter_map(|(ctx, succ)| ContextDist::from_counts(succ).map(|d| (ctx, d)))
            .collect();
        tables.push(table);
    }
    tables
}

/// Number of distinct left extensions of every order-`k` window, read from
/// the order-`k + 1` table.
fn continuation_counts(higher: &CountTable) -> CountTable {
    let mut out = CountTable::new();
    for (context, successors) in higher {
        let shorter = &context[1..];
        for &w in successors.keys() {
            if w == BOS_ID {
                continue;
            }
            *out.entry(shorter.to_vec())
                .or_default()
                .entry(w)
                .or_insert(0) += 1;
        }
    }
    out
}
