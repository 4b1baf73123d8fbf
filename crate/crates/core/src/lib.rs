//! Corpus tooling and evaluation for German Easy Language (Leichte Sprache).
//!
//! The crate covers the preprocessing pipeline, readability statistics,
//! n-gram perplexity with style discrimination, feature-based complexity
//! regression, and the SARI/BLEU/ROUGE-L metric suite.

pub mod complexity;
pub mod desk_corpus;
pub mod error;
pub mod metrics;
pub mod ngram;
pub mod preprocess;
pub mod textstats;

pub use error::{Error, Result};
