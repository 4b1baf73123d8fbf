//! `train-lm`, `perplexity` and `discriminate`. Every corpus record is one
//! token sequence, both for training and for scoring.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use leichtkit::ngram::{
    style_discriminate, NgramModel, NgramTrainer, Smoothing, StyleLabel, TrainConfig, VocabBuilder,
    DEFAULT_DISCOUNT, DEFAULT_MIN_VOCAB_COUNT, DEFAULT_ORDER, MAX_ORDER,
};
use leichtkit::preprocess::Document;
use leichtkit::textstats::tokenize;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{require, Ctx};
use crate::config::stamp;
use crate::error::{CliError, CliResult};
use crate::io::{manifest_path, stream_records};

pub fn load_model(path: &Path) -> CliResult<NgramModel> {
    NgramModel::load(path).map_err(|e| CliError::file(path, e))
}

fn tokens(doc: &Document) -> Vec<String> {
    tokenize(doc.text())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmoothingName {
    #[default]
    #[value(alias = "kn")]
    #[serde(alias = "kn")]
    KneserNey,
    #[value(alias = "wb")]
    #[serde(alias = "wb")]
    WittenBell,
}

#[derive(Debug, Args, Serialize)]
pub struct TrainArgs {
    /// JSON Lines corpus; each record is one training sequence.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// N-gram order, 1 to 5 [default: 3].
    #[arg(long)]
    order: Option<usize>,
    /// Smoothing scheme [default: kneser-ney].
    #[arg(long, value_enum)]
    smoothing: Option<SmoothingName>,
    /// Kneser-Ney absolute discount in (0, 1) [default: 0.75].
    #[arg(long)]
    discount: Option<f64>,
    /// Tokens seen fewer times become <unk> [default: 2].
    #[arg(long)]
    min_count: Option<u64>,
    /// Model file to write; a manifest is written next to it.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct TrainSettings {
    input: Option<PathBuf>,
    order: usize,
    smoothing: SmoothingName,
    discount: f64,
    min_count: u64,
    out: Option<PathBuf>,
}

impl Default for TrainSettings {
    fn default() -> Self {
        Self {
            input: None,
            order: DEFAULT_ORDER,
            smoothing: SmoothingName::default(),
            discount: DEFAULT_DISCOUNT,
            min_count: DEFAULT_MIN_VOCAB_COUNT,
            out: None,
        }
    }
}

impl TrainSettings {
    fn train_config(&self) -> CliResult<TrainConfig> {
        if !(1..=MAX_ORDER).contains(&self.order) {
            return Err(CliError::flag(
                "--order",
                format!("must be between 1 and {MAX_ORDER}, got {}", self.order),
            ));
        }
        if self.min_count == 0 {
            return Err(CliError::flag("--min-count", "must be at least 1"));
        }
        let smoothing = match self.smoothing {
            SmoothingName::WittenBell => Smoothing::WittenBell,
            SmoothingName::KneserNey => Smoothing::KneserNey {
                discount: self.discount,
            },
        };
        if !(self.discount > 0.0 && self.discount < 1.0) {
            return Err(CliError::flag(
                "--discount",
                format!("must lie in (0, 1), got {}", self.discount),
            ));
        }
        Ok(TrainConfig {
            order: self.order,
            smoothing,
            min_vocab_count: self.min_count,
        })
    }
}

pub fn train_lm(args: TrainArgs, ctx: &Ctx) -> CliResult<()> {
    let s: TrainSettings = ctx.config.resolve(&["train-lm"], &args)?;
    let input = require(&s.input, "--input")?;
    let out = require(&s.out, "--out")?;
    let config = s.train_config()?;

    let mut builder = VocabBuilder::new();
    let documents = stream_records(
        input,
        |_, d: Document| Ok(tokens(&d)),
        |t| {
            builder.add(&t);
            Ok(())
        },
    )?;
    let vocab = builder.build(config.min_vocab_count);
    let mut trainer = NgramTrainer::new(config, vocab)?;
    stream_records(
        input,
        |_, d: Document| Ok(tokens(&d)),
        |t| {
            trainer.add(&t);
            Ok(())
        },
    )?;
    let model = trainer.finish()?;
    model.save(out).map_err(|e| CliError::file(out, e))?;

    let manifest = json!({
        "config": stamp("train-lm", &s),
        "model_id": model.fingerprint(),
        "order": model.order(),
        "vocab_size": model.vocab().len(),
        "trained_tokens": model.trained_tokens(),
        "documents": documents,
    });
    ctx.emit(Some(&manifest_path(out)), &manifest)
}

#[derive(Debug, Args, Serialize)]
pub struct PerplexityArgs {
    /// Model written by train-lm.
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,
    /// JSON Lines corpus; each record is one sample.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Output JSON file (default: stdout).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct PerplexitySettings {
    model: Option<PathBuf>,
    input: Option<PathBuf>,
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct SampleRow {
    sample_id: String,
    ppl: f64,
    token_count: usize,
}

fn score(model: &NgramModel, doc: &Document) -> CliResult<(Vec<String>, f64)> {
    let t = tokens(doc);
    let ppl = model
        .perplexity(&t)
        .map_err(|_| CliError::Compute(format!("sample {:?} has no tokens", doc.id)))?;
    Ok((t, ppl))
}

/// Perplexity per sample, averaged over samples in input order.
pub fn perplexity(args: PerplexityArgs, ctx: &Ctx) -> CliResult<()> {
    let s: PerplexitySettings = ctx.config.resolve(&["perplexity"], &args)?;
    let model = load_model(require(&s.model, "--model")?)?;
    let input = require(&s.input, "--input")?;
    let mut rows = Vec::new();
    stream_records(
        input,
        |_, doc: Document| {
            let (t, ppl) = score(&model, &doc)?;
            Ok(SampleRow {
                sample_id: doc.id,
                ppl,
                token_count: t.len(),
            })
        },
        |row| {
            rows.push(row);
            Ok(())
        },
    )?;
    if rows.is_empty() {
        return Err(CliError::Compute("no samples to score".into()));
    }
    let mean_ppl = rows.iter().map(|r| r.ppl).sum::<f64>() / rows.len() as f64;
    let result = json!({
        "config": stamp("perplexity", &s),
        "model_id": model.fingerprint(),
        "samples": rows.len(),
        "mean_ppl": mean_ppl,
        "per_sample": rows,
    });
    ctx.emit(s.out.as_deref(), &result)
}

#[derive(Debug, Args, Serialize)]
pub struct DiscriminateArgs {
    /// Model trained on easy-style text.
    #[arg(long, value_name = "FILE")]
    easy_model: Option<PathBuf>,
    /// Model trained on normal-style text.
    #[arg(long, value_name = "FILE")]
    normal_model: Option<PathBuf>,
    /// JSON Lines corpus. Records with `meta.style` set to easy or normal count toward accuracy.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Output JSON file (default: stdout).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct DiscriminateSettings {
    easy_model: Option<PathBuf>,
    normal_model: Option<PathBuf>,
    input: Option<PathBuf>,
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct LabelRow {
    id: String,
    label: StyleLabel,
    easy_ppl: f64,
    normal_ppl: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected: Option<StyleLabel>,
}

fn expected_style(doc: &Document) -> Option<StyleLabel> {
    match doc
        .meta
        .get("style")
        .map(|s| s.to_ascii_lowercase())
        .as_deref()
    {
        Some("easy") => Some(StyleLabel::Easy),
        Some("normal") => Some(StyleLabel::Normal),
        _ => None,
    }
}

/// Easy when the easy model gives strictly lower perplexity.
pub fn discriminate(args: DiscriminateArgs, ctx: &Ctx) -> CliResult<()> {
    let s: DiscriminateSettings = ctx.config.resolve(&["discriminate"], &args)?;
    let easy = load_model(require(&s.easy_model, "--easy-model")?)?;
    let normal = load_model(require(&s.normal_model, "--normal-model")?)?;
    let input = require(&s.input, "--input")?;

    let mut rows = Vec::new();
    stream_records(
        input,
        |_, doc: Document| {
            let t = tokens(&doc);
            let d = style_discriminate(&easy, &normal, &t)
                .map_err(|_| CliError::Compute(format!("sample {:?} has no tokens", doc.id)))?;
            Ok(LabelRow {
                expected: expected_style(&doc),
                id: doc.id,
                label: d.label,
                easy_ppl: d.easy_ppl,
                normal_ppl: d.normal_ppl,
            })
        },
        |row| {
            rows.push(row);
            Ok(())
        },
    )?;

    let mut labels = BTreeMap::from([("easy", 0usize), ("normal", 0usize)]);
    let mut agreement: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for r in &rows {
        let name = |l: StyleLabel| {
            if l == StyleLabel::Easy {
                "easy"
            } else {
                "normal"
            }
        };
        *labels.get_mut(name(r.label)).expect("both labels present") += 1;
        if let Some(e) = r.expected {
            let slot = agreement.entry(name(e)).or_default();
            slot.0 += 1;
            slot.1 += usize::from(e == r.label);
        }
    }
    let accuracy: serde_json::Map<String, serde_json::Value> = agreement
        .into_iter()
        .map(|(k, (n, hit))| {
            (
                k.to_string(),
                json!({ "samples": n, "correct": hit, "rate": hit as f64 / n as f64 }),
            )
        })
        .collect();
    let result = json!({
        "config": stamp("discriminate", &s),
        "easy_model_id": easy.fingerprint(),
        "normal_model_id": normal.fingerprint(),
        "samples": rows.len(),
        "labels": labels,
        "accuracy": accuracy,
        "results": rows,
    });
    ctx.emit(s.out.as_deref(), &result)
}
