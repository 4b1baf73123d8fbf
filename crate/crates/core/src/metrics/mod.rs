//! Simplification metrics: SARI, corpus BLEU-4 and ROUGE-L.
//!
//! All metrics work on token sequences. [`EvalInstance::from_text`] applies
//! the shared tokenizer and lowercases, which is the convention used by the
//! command line tool.

mod bleu;
mod rouge;
mod sari;

use std::collections::HashMap;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textstats::tokenize;

pub use bleu::{BleuScore, BleuStats, BLEU_EPSILON, BLEU_MAX_ORDER};
pub use rouge::{lcs_len, rouge_l_instance, RougeLScore};
pub use sari::{sari_instance, SariScore, SARI_MAX_ORDER};

/// One system output with its source and references.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalInstance {
    pub source: Vec<String>,
    pub hypothesis: Vec<String>,
    pub references: Vec<Vec<String>>,
}

impl EvalInstance {
    pub fn new(
        source: Vec<String>,
        hypothesis: Vec<String>,
        references: Vec<Vec<String>>,
    ) -> Result<Self> {
        if references.is_empty() {
            return Err(Error::Config(
                "an evaluation instance needs at least one reference".into(),
            ));
        }
        Ok(Self {
            source,
            hypothesis,
            references,
        })
    }

    /// Tokenizes and lowercases raw strings.
    pub fn from_text<S: AsRef<str>>(
        source: &str,
        hypothesis: &str,
        references: &[S],
    ) -> Result<Self> {
        let prep = |s: &str| tokenize(&s.to_lowercase());
        Self::new(
            prep(source),
            prep(hypothesis),
            references.iter().map(|r| prep(r.as_ref())).collect(),
        )
    }
}

/// Multiset of contiguous `n`-grams. Sequences shorter than `n` give an
/// empty map.
pub fn extract_ngrams<T: Eq + Hash>(tokens: &[T], n: usize) -> HashMap<&[T], usize> {
    assert!(n >= 1, "n-gram order must be at least 1");
    let mut grams = HashMap::new();
    for w in tokens.windows(n) {
        *grams.entry(w).or_insert(0) += 1;
    }
    grams
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Metric {
    #[serde(rename = "sari")]
    Sari,
    #[serde(rename = "bleu")]
    Bleu,
    #[serde(rename = "rouge-l")]
    RougeL,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Sari, Metric::Bleu, Metric::RougeL];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Sari => "sari",
            Metric::Bleu => "bleu",
            Metric::RougeL => "rouge-l",
        }
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sari" => Ok(Metric::Sari),
            "bleu" => Ok(Metric::Bleu),
            "rouge-l" | "rougel" | "rouge_l" => Ok(Metric::RougeL),
            other => Err(Error::Config(format!("unknown metric {other:?}"))),
        }
    }
}

/// Corpus-level scores. Serialized flat so that every headline number is a
/// top-level key (`"sari"`, `"bleu"`, `"rouge_l_f1"`, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub instance_count: usize,
    #[serde(flatten, default, skip_serializing_if = "Option::is_none")]
    pub sari: Option<SariScore>,
    #[serde(flatten, default, skip_serializing_if = "Option::is_none")]
    pub bleu: Option<BleuScore>,
    #[serde(flatten, default, skip_serializing_if = "Option::is_none")]
    pub rouge_l: Option<RougeLScore>,
}

/// Mean that does not depend on the order of `values`: the values are
/// sorted before summation.
pub fn order_independent_mean(mut values: Vec<f64>) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len() as f64;
    values.into_iter().sum::<f64>() / n
}

/// Streaming scorer: feed instances one by one, read the corpus report at
/// the end. Per-instance state is a handful of numbers, so large evaluation
/// files never need to be held in memory.
#[derive(Debug, Clone, Default)]
pub struct MetricAccumulator {
    metrics: Vec<Metric>,
    count: usize,
    bleu: BleuStats,
    rouge: Vec<RougeLScore>,
    sari: Vec<SariScore>,
}

impl MetricAccumulator {
    pub fn new(metrics: &[Metric]) -> Self {
        let mut metrics = metrics.to_vec();
        metrics.sort();
        metrics.dedup();
        Self {
            metrics,
            ..Self::default()
        }
    }

    fn wants(&self, m: Metric) -> bool {
        self.metrics.contains(&m)
    }

    pub fn add(&mut self, inst: &EvalInstance) {
        self.count += 1;
        if self.wants(Metric::Bleu) {
            self.bleu.add(inst);
        }
        if self.wants(Metric::RougeL) {
            self.rouge.push(rouge_l_instance(inst));
        }
        if self.wants(Metric::Sari) {
            self.sari.push(sari_instance(inst));
        }
    }

    pub fn finish(self) -> Result<MetricReport> {
        if self.count == 0 {
            return Err(Error::Evaluation("no instances to score".into()));
        }
        let bleu = self.wants(Metric::Bleu).then(|| self.bleu.score());
        let rouge_l = self
            .wants(Metric::RougeL)
            .then(|| RougeLScore::mean(&self.rouge));
        let sari = self
            .wants(Metric::Sari)
            .then(|| SariScore::mean(&self.sari));
        Ok(MetricReport {
            instance_count: self.count,
            sari,
            bleu,
            rouge_l,
        })
    }
}

pub fn evaluate(instances: &[EvalInstance], metrics: &[Metric]) -> Result<MetricReport> {
    let mut acc = MetricAccumulator::new(metrics);
    for inst in instances {
        acc.add(inst);
    }
    acc.finish()
}

pub fn bleu(instances: &[EvalInstance]) -> Result<BleuScore> {
    Ok(evaluate(instances, &[Metric::Bleu])?
        .bleu
        .expect("bleu requested"))
}

pub fn rouge_l(instances: &[EvalInstance]) -> Result<RougeLScore> {
    Ok(evaluate(instances, &[Metric::RougeL])?
        .rouge_l
        .expect("rouge-l requested"))
}

pub fn sari(instances: &[EvalInstance]) -> Result<SariScore> {
    Ok(evaluate(instances, &[Metric::Sari])?
        .sari
        .expect("sari requested"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ngram_multisets() {
        let t = ["a", "b", "a"];
        let uni = extract_ngrams(&t, 1);
        assert_eq!(uni.len(), 2);
        assert_eq!(uni[&["a"][..]], 2);
        assert_eq!(uni[&["b"][..]], 1);
        let bi = extract_ngrams(&t, 2);
        assert_eq!(bi[&["a", "b"][..]], 1);
        assert_eq!(bi[&["b", "a"][..]], 1);
        assert!(extract_ngrams(&["a"], 2).is_empty());
    }

    #[test]
    fn metric_names_round_trip() {
        for m in Metric::ALL {
            assert_eq!(m.name().parse::<Metric>().unwrap(), m);
        }
        assert!("meteor".parse::<Metric>().is_err());
    }

    #[test]
    fn empty_instance_list_is_an_error() {
        assert!(evaluate(&[], &Metric::ALL).is_err());
    }

    #[test]
    fn from_text_lowercases() {
        let i = EvalInstance::from_text("Der Hund.", "der hund", &["DER HUND"]).unwrap();
        assert_eq!(i.source, ["der", "hund", "."]);
        assert_eq!(i.references[0], ["der", "hund"]);
        assert!(EvalInstance::from_text::<&str>("a", "a", &[]).is_err());
    }

    #[test]
    fn report_is_flat() {
        let i = EvalInstance::from_text("a b c d", "a b c d", &["a b c d"]).unwrap();
        let report = evaluate(&[i], &[Metric::Bleu]).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["bleu"], 100.0);
        assert!(json.get("sari").is_none());
    }
}
