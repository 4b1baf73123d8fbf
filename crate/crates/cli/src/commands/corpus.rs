use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use leichtkit::preprocess::{
    assign_splits, count_compounds, preprocess as clean, validate_ratios, Document,
    HyphenationLexicon, DEFAULT_MIN_COUNT,
};
use leichtkit::textstats::{report_from_tokens, SentenceSplitter, TokenizedText};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{require, Ctx, RecordSink};
use crate::config::stamp;
use crate::error::{CliError, CliResult};
use crate::io::{count_records, read_json_file, stream_records, Output};

pub const DEFAULT_SEED: u64 = 42;
const SPLIT_NAMES: [&str; 3] = ["train", "validation", "test"];

fn default_ratios() -> Vec<f64> {
    vec![0.8, 0.1, 0.1]
}

/// Accepts both the `lexicon` output and a bare `{"key": "Hyphen-Form"}` map.
fn load_lexicon(path: &Path) -> CliResult<HyphenationLexicon> {
    let value: Value = read_json_file(path)?;
    if value.get("entries").is_some() {
        return serde_json::from_value(value).map_err(|e| CliError::file(path, e));
    }
    let entries: BTreeMap<String, String> =
        serde_json::from_value(value).map_err(|e| CliError::file(path, e))?;
    Ok(HyphenationLexicon {
        entries,
        frequency: BTreeMap::new(),
    })
}

#[derive(Debug, Args, Serialize)]
pub struct PreprocessArgs {
    /// JSON Lines corpus, one {"id", "text", "meta"} object per line.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Hyphenation lexicon to apply after cleaning.
    #[arg(long, value_name = "FILE")]
    lexicon: Option<PathBuf>,
    /// Output JSON Lines file (default: stdout).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct PreprocessSettings {
    input: Option<PathBuf>,
    lexicon: Option<PathBuf>,
    out: Option<PathBuf>,
}

pub fn preprocess(args: PreprocessArgs, ctx: &Ctx) -> CliResult<()> {
    let s: PreprocessSettings = ctx.config.resolve(&["preprocess"], &args)?;
    let input = require(&s.input, "--input")?;
    let lexicon = s.lexicon.as_deref().map(load_lexicon).transpose()?;
    let mut sink = RecordSink::new(ctx, s.out.as_deref())?;
    let n = stream_records(
        input,
        |_, doc: Document| Ok(clean(&doc, lexicon.as_ref())),
        |doc| sink.push(&doc),
    )?;
    let manifest = json!({ "config": stamp("preprocess", &s), "documents": n });
    sink.finish(ctx, s.out.as_deref(), &manifest)
}

#[derive(Debug, Args, Serialize)]
pub struct SplitArgs {
    /// JSON Lines corpus to split.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Directory for train/validation/test.jsonl and manifest.json.
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    /// Two or three fractions summing to 1 [default: 0.8,0.1,0.1].
    #[arg(long, value_delimiter = ',', value_name = "R,R[,R]")]
    ratios: Option<Vec<f64>>,
    /// Shuffle seed [default: 42].
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct SplitSettings {
    input: Option<PathBuf>,
    out_dir: Option<PathBuf>,
    ratios: Vec<f64>,
    seed: u64,
}

impl Default for SplitSettings {
    fn default() -> Self {
        Self {
            input: None,
            out_dir: None,
            ratios: default_ratios(),
            seed: DEFAULT_SEED,
        }
    }
}

/// Split files keep the input order of their documents; membership comes
/// from the seeded shuffle.
pub fn split(args: SplitArgs, ctx: &Ctx) -> CliResult<()> {
    let s: SplitSettings = ctx.config.resolve(&["split"], &args)?;
    let input = require(&s.input, "--input")?;
    let out_dir = require(&s.out_dir, "--out-dir")?;
    validate_ratios(&s.ratios).map_err(|e| CliError::flag("--ratios", e))?;

    let n = count_records(input)?;
    let parts = assign_splits(n, &s.ratios, s.seed).map_err(|e| CliError::flag("--input", e))?;
    let mut role = vec![0usize; n];
    for (k, part) in parts.iter().enumerate() {
        for &i in part {
            role[i] = k;
        }
    }

    std::fs::create_dir_all(out_dir).map_err(|e| CliError::file(out_dir, e))?;
    let files: Vec<PathBuf> = (0..parts.len())
        .map(|k| out_dir.join(format!("{}.jsonl", SPLIT_NAMES[k])))
        .collect();
    let mut outs = files
        .iter()
        .map(|p| Output::new(Some(p)))
        .collect::<CliResult<Vec<_>>>()?;
    let mut index = 0;
    stream_records(
        input,
        |_, doc: Document| Ok(doc),
        |doc| {
            let out = &mut outs[role[index]];
            index += 1;
            out.json_line(&doc)
        },
    )?;
    for out in outs {
        out.finish()?;
    }

    let mut splits = serde_json::Map::new();
    for (k, part) in parts.iter().enumerate() {
        splits.insert(
            SPLIT_NAMES[k].into(),
            json!({ "file": format!("{}.jsonl", SPLIT_NAMES[k]), "documents": part.len() }),
        );
    }
    let manifest = json!({
        "config": stamp("split", &s),
        "seed": s.seed,
        "ratios": s.ratios,
        "input_documents": n,
        "splits": splits,
    });
    ctx.emit(Some(&out_dir.join("manifest.json")), &manifest)
}

#[derive(Debug, Args, Serialize)]
pub struct LexiconArgs {
    /// JSON Lines corpus to harvest compounds from.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Minimum occurrences of a hyphenated form [default: 2].
    #[arg(long)]
    min_count: Option<usize>,
    /// Output JSON file (default: stdout).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct LexiconSettings {
    input: Option<PathBuf>,
    min_count: usize,
    out: Option<PathBuf>,
}

impl Default for LexiconSettings {
    fn default() -> Self {
        Self {
            input: None,
            min_count: DEFAULT_MIN_COUNT,
            out: None,
        }
    }
}

pub fn lexicon(args: LexiconArgs, ctx: &Ctx) -> CliResult<()> {
    let s: LexiconSettings = ctx.config.resolve(&["lexicon"], &args)?;
    let input = require(&s.input, "--input")?;
    if s.min_count == 0 {
        return Err(CliError::flag("--min-count", "must be at least 1"));
    }
    let mut counts: HashMap<String, usize> = HashMap::new();
    let n = stream_records(
        input,
        |_, doc: Document| Ok(count_compounds(doc.text())),
        |part| {
            for (k, v) in part {
                *counts.entry(k).or_insert(0) += v;
            }
            Ok(())
        },
    )?;
    let lex = HyphenationLexicon::from_counts(counts, s.min_count);
    let result = json!({
        "config": stamp("lexicon", &s),
        "documents": n,
        "entries": lex.entries,
        "frequency": lex.frequency,
    });
    ctx.emit(s.out.as_deref(), &result)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatsFormat {
    /// One JSON object per line.
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args, Serialize)]
pub struct StatsArgs {
    /// JSON Lines corpus; cleaned text is used when present.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Row format [default: json].
    #[arg(long, value_enum)]
    format: Option<StatsFormat>,
    /// Abbreviation list, one entry per line, replacing the built-in one.
    #[arg(long, value_name = "FILE")]
    abbreviations: Option<PathBuf>,
    /// Output file (default: stdout).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct StatsSettings {
    input: Option<PathBuf>,
    format: StatsFormat,
    abbreviations: Option<PathBuf>,
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct StatsRow {
    id: String,
    fre: f64,
    avg_sentence_length_words: f64,
    avg_syllables_per_word: f64,
    sentence_count: usize,
    word_count: usize,
    syllable_count: usize,
    newline_count: usize,
    newlines_per_sentence: f64,
    comma_count: usize,
    commas_per_sentence: f64,
}

enum RowOut<'a> {
    Csv(Box<csv::Writer<&'a mut dyn std::io::Write>>),
    Records(&'a mut RecordSink),
}

pub fn stats(args: StatsArgs, ctx: &Ctx) -> CliResult<()> {
    let s: StatsSettings = ctx.config.resolve(&["stats"], &args)?;
    let input = require(&s.input, "--input")?;
    let splitter = match &s.abbreviations {
        Some(p) => SentenceSplitter::from_file(p).map_err(|e| CliError::file(p, e))?,
        None => SentenceSplitter::default(),
    };
    let mut sink = RecordSink::new(ctx, s.out.as_deref())?;
    let mut sums = [0.0; 3];
    let row = |_, doc: Document| {
        let r = report_from_tokens(&TokenizedText::with_splitter(doc.text(), &splitter));
        Ok(StatsRow {
            id: doc.id,
            fre: r.readability.fre,
            avg_sentence_length_words: r.readability.avg_sentence_length_words,
            avg_syllables_per_word: r.readability.avg_syllables_per_word,
            sentence_count: r.readability.sentence_count,
            word_count: r.readability.word_count,
            syllable_count: r.readability.syllable_count,
            newline_count: r.newline_count,
            newlines_per_sentence: r.readability.newlines_per_sentence,
            comma_count: r.comma_count,
            commas_per_sentence: r.commas_per_sentence,
        })
    };
    let n = {
        let mut rows = match s.format {
            StatsFormat::Csv if sink.output().is_some() => RowOut::Csv(Box::new(
                csv::Writer::from_writer(sink.output().expect("checked").writer()),
            )),
            _ => RowOut::Records(&mut sink),
        };
        let n = stream_records(input, row, |r| {
            sums[0] += r.fre;
            sums[1] += r.newlines_per_sentence;
            sums[2] += r.commas_per_sentence;
            match &mut rows {
                RowOut::Csv(w) => w.serialize(&r).map_err(|e| CliError::Io(e.to_string())),
                RowOut::Records(sink) => sink.push(&r),
            }
        })?;
        if let RowOut::Csv(mut w) = rows {
            w.flush().map_err(|e| CliError::Io(e.to_string()))?;
        }
        n
    };
    let mean = |x: f64| if n == 0 { 0.0 } else { x / n as f64 };
    let manifest = json!({
        "config": stamp("stats", &s),
        "documents": n,
        "mean_fre": mean(sums[0]),
        "mean_newlines_per_sentence": mean(sums[1]),
        "mean_commas_per_sentence": mean(sums[2]),
    });
    sink.finish(ctx, s.out.as_deref(), &manifest)
}
