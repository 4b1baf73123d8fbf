//! Shared preprocessing for Easy Language corpora: markup removal, bullet
//! lists rewritten as phrases, compound hyphenation, and seeded splitting.

mod bullets;
mod hyphenation;
mod markup;
mod split;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bullets::convert_bullets;
pub use hyphenation::{
    apply_hyphenation, build_hyphenation_lexicon, count_compounds, dehyphenate_key,
    is_compound_noun, HyphenationLexicon, DEFAULT_MIN_COUNT,
};
pub use markup::{contains_markup, strip_markup};
pub use split::{
    assign_splits, shuffled_indices, split_corpus, split_sizes, validate_ratios, CorpusSplit,
};

/// A corpus document. Serialized as one JSON Lines record:
/// `{"id": .., "text": .., "clean_text": .., "meta": {..}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    #[serde(rename = "text")]
    pub raw_text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clean_text: Option<String>,
    #[serde(default)]
    pub meta: BTreeMap<String, String>,
}

impl Document {
    pub fn new(id: impl Into<String>, raw_text: impl Into<String>) -> Result<Self> {
        let raw_text = raw_text.into();
        let id = id.into();
        if raw_text.is_empty() {
            return Err(Error::Config(format!("document {id:?} has empty text")));
        }
        Ok(Self {
            id,
            raw_text,
            clean_text: None,
            meta: BTreeMap::new(),
        })
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    /// Cleaned text when available, raw text otherwise.
    pub fn text(&self) -> &str {
        self.clean_text.as_deref().unwrap_or(&self.raw_text)
    }
}

/// The full cleaning pipeline on a string: markup, bullets, then
/// hyphenation when a lexicon is given.
pub fn preprocess_text(raw: &str, lexicon: Option<&HyphenationLexicon>) -> String {
    let text = convert_bullets(&strip_markup(raw));
    match lexicon {
        Some(lex) => lex.apply(&text),
        None => text,
    }
}

/// Returns `doc` with `clean_text` set from its raw text.
pub fn preprocess(doc: &Document, lexicon: Option<&HyphenationLexicon>) -> Document {
    Document {
        clean_text: Some(preprocess_text(&doc.raw_text, lexicon)),
        ..doc.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pipeline_composes_stages() {
        let doc = Document::new("d1", "<p>Hallo</p>").unwrap();
        assert_eq!(preprocess(&doc, None).clean_text.as_deref(), Some("Hallo"));
    }

    #[test]
    fn pipeline_with_lexicon() {
        let lex = HyphenationLexicon::build(&["Bundes-Land Bundes-Land"], 2);
        let raw =
            "<h1>Wahl</h1>Im Bundesland w&auml;hlen:<ul><li>Frauen</li><li>M&auml;nner</li></ul>";
        let clean = preprocess_text(raw, Some(&lex));
        assert_eq!(clean, "Wahl\nIm Bundes-Land wählen: Frauen, Männer.");
        assert_eq!(preprocess_text(&clean, Some(&lex)), clean);
    }

    #[test]
    fn empty_text_rejected() {
        assert!(Document::new("x", "").is_err());
    }

    #[test]
    fn jsonl_shape() {
        let doc: Document =
            serde_json::from_str(r#"{"id":"a","text":"Hallo","meta":{"source":"ndr"}}"#).unwrap();
        assert_eq!(doc.meta["source"], "ndr");
        assert_eq!(doc.clean_text, None);
        let line = serde_json::to_string(&preprocess(&doc, None)).unwrap();
        assert_eq!(
            line,
            r#"{"id":"a","text":"Hallo","clean_text":"Hallo","meta":{"source":"ndr"}}"#
        );
    }
}
