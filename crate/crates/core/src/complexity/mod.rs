//! Sentence complexity on the 1-7 scale: a fixed set of surface and
//! language-model features fed to a ridge regressor.

mod ridge;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::order_independent_mean;
use crate::ngram::NgramModel;
use crate::textstats::{is_word, report_from_tokens, TokenizedText};

pub use ridge::RidgeFit;

pub const MIN_COMPLEXITY: f64 = 1.0;
pub const MAX_COMPLEXITY: f64 = 7.0;
pub const DEFAULT_LAMBDA: f64 = 1.0;

/// Feature names in vector order.
pub const FEATURE_NAMES: [&str; 10] = [
    "avg_sentence_length",
    "avg_word_length",
    "avg_syllables_per_word",
    "fre",
    "type_token_ratio",
    "comma_density",
    "word_count",
    "log_easy_ppl",
    "log_normal_ppl",
    "log_ppl_ratio",
];
pub const FEATURE_COUNT: usize = FEATURE_NAMES.len();

/// Surface features only; the three perplexity slots are zero.
pub const SPEC_VERSION_TEXT: &str = "leichtkit-features-1/text";
/// Surface features plus easy/normal perplexities.
pub const SPEC_VERSION_WITH_LM: &str = "leichtkit-features-1/text+lm";

/// Easy-style and normal-style models used for the perplexity features.
#[derive(Debug, Clone, Copy)]
pub struct LmPair<'a> {
    pub easy: &'a NgramModel,
    pub normal: &'a NgramModel,
}

pub fn spec_version(lms: Option<LmPair<'_>>) -> &'static str {
    if lms.is_some() {
        SPEC_VERSION_WITH_LM
    } else {
        SPEC_VERSION_TEXT
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub spec_version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledSentence {
    pub text: String,
    pub complexity: f64,
}

impl LabeledSentence {
    pub fn new(text: impl Into<String>, complexity: f64) -> Result<Self> {
        let s = Self {
            text: text.into(),
            complexity,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if (MIN_COMPLEXITY..=MAX_COMPLEXITY).contains(&self.complexity) {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "complexity {} outside [{MIN_COMPLEXITY}, {MAX_COMPLEXITY}]",
                self.complexity
            )))
        }
    }
}

/// Computes the feature vector of `text`.
///
/// Word length counts characters; type-token ratio and comma density are
/// taken over words (tokens with a letter), types compared case-insensitively.
pub fn extract_features(text: &str, lms: Option<LmPair<'_>>) -> Result<FeatureVector> {
    let tokenized = TokenizedText::new(text);
    let words: Vec<&String> = tokenized.tokens.iter().filter(|t| is_word(t)).collect();
    if words.is_empty() {
        return Err(Error::Feature("text contains no words".into()));
    }
    let report = report_from_tokens(&tokenized);
    let r = &report.readability;
    let n = words.len() as f64;
    let avg_word_length = words.iter().map(|w| w.chars().count()).sum::<usize>() as f64 / n;
    let types: HashSet<String> = words.iter().map(|w| w.to_lowercase()).collect();

    let mut values = vec![
        r.avg_sentence_length_words,
        avg_word_length,
        r.avg_syllables_per_word,
        r.fre,
        types.len() as f64 / n,
        report.comma_count as f64 / n,
        n,
        0.0,
        0.0,
        0.0,
    ];
    if let Some(pair) = lms {
        let easy = pair.easy.perplexity(&tokenized.tokens)?.ln();
        let normal = pair.normal.perplexity(&tokenized.tokens)?.ln();
        values[7] = easy;
        values[8] = normal;
        values[9] = easy - normal;
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Feature("non-finite feature value".into()));
    }
    Ok(FeatureVector {
        values,
        spec_version: spec_version(lms).to_string(),
    })
}

/// Fitted complexity regressor, persisted as JSON.
///
/// `weights[0]` is the intercept, `weights[1..]` the standardized feature
/// weights in [`FEATURE_NAMES`] order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityModel {
    pub spec_version: String,
    pub feature_names: Vec<String>,
    pub lambda: f64,
    pub weights: Vec<f64>,
    pub feature_means: Vec<f64>,
    pub feature_stds: Vec<f64>,
    pub dropped_features: Vec<String>,
    pub train_size: usize,
}

impl ComplexityModel {
    pub fn fit(train: &[LabeledSentence], lambda: f64, lms: Option<LmPair<'_>>) -> Result<Self> {
        if train.len() < 2 {
            return Err(Error::Fit("need at least 2 training sentences".into()));
        }
        let mut rows = Vec::with_capacity(train.len());
        let mut targets = Vec::with_capacity(train.len());
        for s in train {
            s.validate()?;
            rows.push(extract_features(&s.text, lms)?.values);
            targets.push(s.complexity);
        }
        Self::fit_features(&rows, &targets, lambda, spec_version(lms))
    }

    /// Fits on precomputed rows; `spec_version` names the extractor setup.
    pub fn fit_features(
        rows: &[Vec<f64>],
        targets: &[f64],
        lambda: f64,
        spec_version: &str,
    ) -> Result<Self> {
        let ridge = RidgeFit::fit(rows, targets, lambda)?;
        let names: Vec<String> = if rows[0].len() == FEATURE_COUNT {
            FEATURE_NAMES.iter().map(|s| s.to_string()).collect()
        } else {
            (0..rows[0].len()).map(|j| format!("x{j}")).collect()
        };
        let dropped_features = names
            .iter()
            .zip(&ridge.dropped)
            .filter(|(_, &d)| d)
            .map(|(n, _)| n.clone())
            .collect();
        let mut weights = vec![ridge.intercept];
        weights.extend(&ridge.weights);
        Ok(Self {
            spec_version: spec_version.to_string(),
            feature_names: names,
            lambda,
            weights,
            feature_means: ridge.means,
            feature_stds: ridge.stds,
            dropped_features,
            train_size: rows.len(),
        })
    }

    fn ridge(&self) -> RidgeFit {
        RidgeFit {
            lambda: self.lambda,
            intercept: self.weights[0],
            weights: self.weights[1..].to_vec(),
            means: self.feature_means.clone(),
            stds: self.feature_stds.clone(),
            dropped: self
                .feature_names
                .iter()
                .map(|n| self.dropped_features.contains(n))
                .collect(),
        }
    }

    fn check_version(&self, version: &str) -> Result<()> {
        if version == self.spec_version {
            Ok(())
        } else {
            Err(Error::Compatibility(format!(
                "model was fitted with features {:?}, extractor produces {:?}",
                self.spec_version, version
            )))
        }
    }

    /// Linear prediction before clamping.
    pub fn predict_unclamped(&self, features: &FeatureVector) -> Result<f64> {
        self.check_version(&features.spec_version)?;
        if features.values.len() != self.feature_means.len() {
            return Err(Error::Compatibility(format!(
                "expected {} features, got {}",
                self.feature_means.len(),
                features.values.len()
            )));
        }
        Ok(self.ridge().predict(&features.values))
    }

    pub fn predict_features(&self, features: &FeatureVector) -> Result<f64> {
        Ok(clamp_complexity(self.predict_unclamped(features)?))
    }

    pub fn predict(&self, text: &str, lms: Option<LmPair<'_>>) -> Result<f64> {
        self.check_version(spec_version(lms))?;
        self.predict_features(&extract_features(text, lms)?)
    }

    pub fn evaluate_mse(&self, test: &[LabeledSentence], lms: Option<LmPair<'_>>) -> Result<f64> {
        if test.is_empty() {
            return Err(Error::Evaluation("empty test set".into()));
        }
        let errors = test
            .iter()
            .map(|s| Ok((self.predict(&s.text, lms)? - s.complexity).powi(2)))
            .collect::<Result<Vec<f64>>>()?;
        Ok(order_independent_mean(errors))
    }

    /// Intercept and coefficients on unstandardized features.
    pub fn raw_coefficients(&self) -> (f64, Vec<f64>) {
        self.ridge().raw_coefficients()
    }
}

pub fn clamp_complexity(x: f64) -> f64 {
    x.clamp(MIN_COMPLEXITY, MAX_COMPLEXITY)
}

/// MSE on `test` of the predictor that always answers the mean training label.
pub fn mean_baseline_mse(train: &[LabeledSentence], test: &[LabeledSentence]) -> Result<f64> {
    if train.is_empty() || test.is_empty() {
        return Err(Error::Evaluation("empty train or test set".into()));
    }
    let mean = train.iter().map(|s| s.complexity).sum::<f64>() / train.len() as f64;
    Ok(order_independent_mean(
        test.iter().map(|s| (s.complexity - mean).powi(2)).collect(),
    ))
}
