use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use leichtkit::complexity::{
    extract_features, spec_version, ComplexityModel, FeatureVector, LabeledSentence, LmPair,
    DEFAULT_LAMBDA,
};
use leichtkit::metrics::order_independent_mean;
use leichtkit::ngram::NgramModel;
use leichtkit::preprocess::{assign_splits, validate_ratios};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::corpus::DEFAULT_SEED;
use super::lm::load_model;
use super::{require, Ctx, RecordSink};
use crate::config::stamp;
use crate::error::{CliError, CliResult};
use crate::io::{count_records, read_json_file, stream_records, write_json_file};

#[derive(Debug, Subcommand)]
pub enum Action {
    /// Fit on the train part of a seeded split and report held-out MSE.
    Fit(FitArgs),
    /// Predict the complexity of each input sentence.
    Predict(PredictArgs),
    /// Mean squared error of a fitted model on labeled sentences.
    Eval(EvalArgs),
}

pub fn run(action: Action, ctx: &Ctx) -> CliResult<()> {
    match action {
        Action::Fit(a) => fit(a, ctx),
        Action::Predict(a) => predict(a, ctx),
        Action::Eval(a) => eval(a, ctx),
    }
}

/// Optional pair of language models adding perplexity features.
#[derive(Debug, Default, Clone, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LmPaths {
    /// Easy-style language model; requires --normal-model.
    #[arg(long, value_name = "FILE")]
    easy_model: Option<PathBuf>,
    /// Normal-style language model; requires --easy-model.
    #[arg(long, value_name = "FILE")]
    normal_model: Option<PathBuf>,
}

struct Lms(Option<(NgramModel, NgramModel)>);

impl Lms {
    fn load(easy: &Option<PathBuf>, normal: &Option<PathBuf>) -> CliResult<Self> {
        match (easy, normal) {
            (None, None) => Ok(Self(None)),
            (Some(e), Some(n)) => Ok(Self(Some((load_model(e)?, load_model(n)?)))),
            (Some(_), None) => Err(CliError::flag(
                "--normal-model",
                "required together with --easy-model",
            )),
            (None, Some(_)) => Err(CliError::flag(
                "--easy-model",
                "required together with --normal-model",
            )),
        }
    }

    fn pair(&self) -> Option<LmPair<'_>> {
        self.0
            .as_ref()
            .map(|(easy, normal)| LmPair { easy, normal })
    }
}

#[derive(Debug, Deserialize)]
struct Labeled {
    text: String,
    complexity: f64,
}

#[derive(Debug, Deserialize)]
struct Unlabeled {
    #[serde(default)]
    id: Option<String>,
    text: String,
}

fn features(
    path: &Path,
    line: usize,
    text: &str,
    lms: Option<LmPair<'_>>,
) -> CliResult<FeatureVector> {
    extract_features(text, lms)
        .map_err(|e| CliError::Compute(format!("{}:{line}: {e}", path.display())))
}

fn labeled_row(
    path: &Path,
    line: usize,
    r: Labeled,
    lms: Option<LmPair<'_>>,
) -> CliResult<(FeatureVector, f64)> {
    let s =
        LabeledSentence::new(r.text, r.complexity).map_err(|e| CliError::record(path, line, e))?;
    Ok((features(path, line, &s.text, lms)?, s.complexity))
}

fn mse(model: &ComplexityModel, rows: &[(FeatureVector, f64)]) -> CliResult<Option<f64>> {
    if rows.is_empty() {
        return Ok(None);
    }
    let errors = rows
        .iter()
        .map(|(f, y)| Ok((model.predict_features(f)? - y).powi(2)))
        .collect::<CliResult<Vec<f64>>>()?;
    Ok(Some(order_independent_mean(errors)))
}

fn baseline_mse(mean: f64, rows: &[(FeatureVector, f64)]) -> Option<f64> {
    (!rows.is_empty())
        .then(|| order_independent_mean(rows.iter().map(|(_, y)| (y - mean).powi(2)).collect()))
}

fn load_complexity_model(path: &Path) -> CliResult<ComplexityModel> {
    read_json_file(path)
}

fn check_lambda(lambda: f64) -> CliResult<()> {
    if lambda.is_finite() && lambda >= 0.0 {
        Ok(())
    } else {
        Err(CliError::flag(
            "--lambda",
            format!("must be a finite non-negative number, got {lambda}"),
        ))
    }
}

#[derive(Debug, Args, Serialize)]
pub struct FitArgs {
    /// JSON Lines with {"text", "complexity"} per line, labels in [1, 7].
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Ridge penalty on standardized features [default: 1.0].
    #[arg(long)]
    lambda: Option<f64>,
    /// Train, validation and test fractions [default: 0.8,0.1,0.1].
    #[arg(long, value_delimiter = ',', value_name = "R,R,R")]
    split: Option<Vec<f64>>,
    /// Split seed [default: 42].
    #[arg(long)]
    seed: Option<u64>,
    /// Fit on only the first N sentences of the shuffled train part.
    #[arg(long, value_name = "N")]
    train_limit: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    lms: LmPaths,
    /// Model file to write.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Write the evaluation report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct FitSettings {
    input: Option<PathBuf>,
    lambda: f64,
    split: Vec<f64>,
    seed: u64,
    train_limit: Option<usize>,
    easy_model: Option<PathBuf>,
    normal_model: Option<PathBuf>,
    out: Option<PathBuf>,
    report: Option<PathBuf>,
}

impl Default for FitSettings {
    fn default() -> Self {
        Self {
            input: None,
            lambda: DEFAULT_LAMBDA,
            split: vec![0.8, 0.1, 0.1],
            seed: DEFAULT_SEED,
            train_limit: None,
            easy_model: None,
            normal_model: None,
            out: None,
            report: None,
        }
    }
}

/// Records not used for fitting when `--train-limit` applies.
const UNUSED: usize = usize::MAX;

fn fit(args: FitArgs, ctx: &Ctx) -> CliResult<()> {
    let s: FitSettings = ctx.config.resolve(&["complexity", "fit"], &args)?;
    let input = require(&s.input, "--input")?;
    let out = require(&s.out, "--out")?;
    check_lambda(s.lambda)?;
    if s.split.len() != 3 {
        return Err(CliError::flag(
            "--split",
            "expected train, validation and test fractions",
        ));
    }
    validate_ratios(&s.split).map_err(|e| CliError::flag("--split", e))?;
    if s.train_limit.is_some_and(|n| n < 2) {
        return Err(CliError::flag("--train-limit", "must be at least 2"));
    }
    let lms = Lms::load(&s.easy_model, &s.normal_model)?;
    let pair = lms.pair();

    let n = count_records(input)?;
    let parts = assign_splits(n, &s.split, s.seed).map_err(|e| CliError::flag("--input", e))?;
    let mut role = vec![0usize; n];
    for (k, part) in parts.iter().enumerate() {
        for (rank, &i) in part.iter().enumerate() {
            role[i] = if k == 0 && s.train_limit.is_some_and(|l| rank >= l) {
                UNUSED
            } else {
                k
            };
        }
    }

    let mut buckets: [Vec<(FeatureVector, f64)>; 3] = Default::default();
    let mut index = 0;
    stream_records(
        input,
        |line, r: Labeled| labeled_row(input, line, r, pair),
        |row| {
            if let Some(b) = buckets.get_mut(role[index]) {
                b.push(row);
            }
            index += 1;
            Ok(())
        },
    )?;
    let [train, validation, test] = buckets;

    let rows: Vec<Vec<f64>> = train.iter().map(|(f, _)| f.values.clone()).collect();
    let targets: Vec<f64> = train.iter().map(|(_, y)| *y).collect();
    if rows.len() < 2 {
        return Err(CliError::Compute(format!(
            "need at least 2 training sentences, got {}",
            rows.len()
        )));
    }
    let model = ComplexityModel::fit_features(&rows, &targets, s.lambda, spec_version(pair))?;
    let config = stamp("complexity fit", &s);

    let mut file = serde_json::Map::new();
    file.insert("config".into(), config.clone());
    if let Value::Object(fields) = serde_json::to_value(&model).expect("models serialize") {
        file.extend(fields);
    }
    write_json_file(out, &Value::Object(file))?;

    let train_mean = targets.iter().sum::<f64>() / targets.len() as f64;
    let report = json!({
        "config": config,
        "spec_version": model.spec_version,
        "lambda": model.lambda,
        "sizes": { "train": train.len(), "validation": validation.len(), "test": test.len() },
        "train_mse": mse(&model, &train)?,
        "validation_mse": mse(&model, &validation)?,
        "test_mse": mse(&model, &test)?,
        "baseline_validation_mse": baseline_mse(train_mean, &validation),
        "baseline_test_mse": baseline_mse(train_mean, &test),
        "dropped_features": model.dropped_features,
    });
    ctx.emit(s.report.as_deref(), &report)
}

#[derive(Debug, Args, Serialize)]
pub struct PredictArgs {
    /// Model written by `complexity fit`.
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,
    /// JSON Lines with {"text"} and an optional "id" per line.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    lms: LmPaths,
    /// Output JSON Lines file (default: stdout).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct PredictSettings {
    model: Option<PathBuf>,
    input: Option<PathBuf>,
    easy_model: Option<PathBuf>,
    normal_model: Option<PathBuf>,
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct Prediction {
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    complexity: f64,
}

fn predict(args: PredictArgs, ctx: &Ctx) -> CliResult<()> {
    let s: PredictSettings = ctx.config.resolve(&["complexity", "predict"], &args)?;
    let model = load_complexity_model(require(&s.model, "--model")?)?;
    let input = require(&s.input, "--input")?;
    let lms = Lms::load(&s.easy_model, &s.normal_model)?;
    let pair = lms.pair();
    let mut sink = RecordSink::new(ctx, s.out.as_deref())?;
    let n = stream_records(
        input,
        |line, r: Unlabeled| {
            let f = features(input, line, &r.text, pair)?;
            Ok(Prediction {
                id: r.id,
                complexity: model.predict_features(&f)?,
            })
        },
        |p| sink.push(&p),
    )?;
    let manifest = json!({
        "config": stamp("complexity predict", &s),
        "spec_version": model.spec_version,
        "sentences": n,
    });
    sink.finish(ctx, s.out.as_deref(), &manifest)
}

#[derive(Debug, Args, Serialize)]
pub struct EvalArgs {
    /// Model written by `complexity fit`.
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,
    /// JSON Lines with {"text", "complexity"} per line.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    lms: LmPaths,
    /// Output JSON file (default: stdout).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct EvalSettings {
    model: Option<PathBuf>,
    input: Option<PathBuf>,
    easy_model: Option<PathBuf>,
    normal_model: Option<PathBuf>,
    out: Option<PathBuf>,
}

fn eval(args: EvalArgs, ctx: &Ctx) -> CliResult<()> {
    let s: EvalSettings = ctx.config.resolve(&["complexity", "eval"], &args)?;
    let model = load_complexity_model(require(&s.model, "--model")?)?;
    let input = require(&s.input, "--input")?;
    let lms = Lms::load(&s.easy_model, &s.normal_model)?;
    let pair = lms.pair();
    let mut rows = Vec::new();
    stream_records(
        input,
        |line, r: Labeled| labeled_row(input, line, r, pair),
        |row| {
            rows.push(row);
            Ok(())
        },
    )?;
    let Some(value) = mse(&model, &rows)? else {
        return Err(CliError::Compute("no labeled sentences to evaluate".into()));
    };
    let result = json!({
        "config": stamp("complexity eval", &s),
        "spec_version": model.spec_version,
        "sentences": rows.len(),
        "mse": value,
    });
    ctx.emit(s.out.as_deref(), &result)
}
