use std::path::PathBuf;

use clap::Args;
use leichtkit::metrics::{EvalInstance, Metric, MetricAccumulator};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{require, Ctx};
use crate::config::stamp;
use crate::error::{CliError, CliResult};
use crate::io::stream_records;

fn parse_metric(s: &str) -> Result<Metric, String> {
    s.parse().map_err(|e: leichtkit::Error| e.to_string())
}

#[derive(Debug, Args, Serialize)]
pub struct EvaluateArgs {
    /// JSON Lines with {"source", "hypothesis", "references": [..]} per line.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Comma-separated subset of sari, bleu, rouge-l [default: all].
    #[arg(long, value_delimiter = ',', value_parser = parse_metric)]
    metrics: Option<Vec<Metric>>,
    /// Output JSON file (default: stdout).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct EvaluateSettings {
    input: Option<PathBuf>,
    metrics: Vec<Metric>,
    out: Option<PathBuf>,
}

impl Default for EvaluateSettings {
    fn default() -> Self {
        Self {
            input: None,
            metrics: Metric::ALL.to_vec(),
            out: None,
        }
    }
}

#[derive(Debug, Deserialize)]
struct Record {
    source: String,
    hypothesis: String,
    references: Vec<String>,
}

pub fn evaluate(args: EvaluateArgs, ctx: &Ctx) -> CliResult<()> {
    let s: EvaluateSettings = ctx.config.resolve(&["evaluate"], &args)?;
    let input = require(&s.input, "--input")?;
    if s.metrics.is_empty() {
        return Err(CliError::flag("--metrics", "no metric selected"));
    }
    let mut acc = MetricAccumulator::new(&s.metrics);
    stream_records(
        input,
        |line, r: Record| {
            EvalInstance::from_text(&r.source, &r.hypothesis, &r.references)
                .map_err(|e| CliError::record(input, line, e))
        },
        |inst| {
            acc.add(&inst);
            Ok(())
        },
    )?;
    let report = acc.finish()?;
    let mut result = serde_json::Map::new();
    result.insert("config".into(), stamp("evaluate", &s));
    if let Value::Object(fields) = serde_json::to_value(&report).expect("reports serialize") {
        result.extend(fields);
    }
    ctx.emit(s.out.as_deref(), &Value::Object(result))
}
