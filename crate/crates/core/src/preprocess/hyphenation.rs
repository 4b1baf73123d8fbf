//! Hyphenated compound nouns (`Bundes-Land`) harvested from a corpus and
//! applied to their unhyphenated spellings.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::textstats::tokenize;

/// Default minimum number of occurrences for a hyphenated form to be kept.
pub const DEFAULT_MIN_COUNT: usize = 2;

/// Maps lowercase concatenated compounds to their canonical hyphenated form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyphenationLexicon {
    /// `"bundesland" -> "Bundes-Land"`
    pub entries: BTreeMap<String, String>,
    /// Occurrence count of every hyphenated form that met the threshold.
    pub frequency: BTreeMap<String, usize>,
}

/// Lowercased form with every hyphen removed.
pub fn dehyphenate_key(form: &str) -> String {
    form.chars()
        .filter(|&c| c != '-')
        .flat_map(char::to_lowercase)
        .collect()
}

/// A hyphenated compound: at least two segments, each alphabetic, at least
/// two characters long and starting with an uppercase letter.
pub fn is_compound_noun(token: &str) -> bool {
    let mut segments = 0;
    for segment in token.split('-') {
        let mut chars = segment.chars();
        let Some(first) = chars.next() else {
            return false;
        };
        if !first.is_uppercase()
            || segment.chars().count() < 2
            || !segment.chars().all(char::is_alphabetic)
        {
            return false;
        }
        segments += 1;
    }
    segments >= 2
}

impl HyphenationLexicon {
    /// Collects hyphenated compounds occurring at least `min_count` times.
    ///
    /// When several hyphenations share a key the most frequent wins, ties go
    /// to the lexicographically smallest form.
    pub fn build<S: AsRef<str> + Sync>(texts: &[S], min_count: usize) -> Self {
        let counts = texts
            .par_iter()
            .map(|t| count_compounds(t.as_ref()))
            .reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            });
        Self::from_counts(counts, min_count)
    }

    /// Builds the lexicon from precomputed hyphenated-form counts.
    pub fn from_counts(counts: HashMap<String, usize>, min_count: usize) -> Self {
        let min_count = min_count.max(1);
        let frequency: BTreeMap<String, usize> = counts
            .into_iter()
            .filter(|&(_, n)| n >= min_count)
            .collect();

        let mut entries: BTreeMap<String, String> = BTreeMap::new();
        // BTreeMap iteration is lexicographic, so the first form seen at the
        // winning count is the smallest.
        for (form, &count) in &frequency {
            let key = dehyphenate_key(form);
            match entries.get(&key) {
                Some(current) if frequency[current] >= count => {}
                _ => {
                    entries.insert(key, form.clone());
                }
            }
        }
        Self { entries, frequency }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Replaces unhyphenated spellings of known compounds in `text`.
    ///
    /// Only whole tokens match, tokens that already contain a hyphen are left
    /// alone, the first letter keeps the case it had in the text, and
    /// replacements are never revisited.
    pub fn apply(&self, text: &str) -> String {
        if self.is_empty() {
            return text.to_string();
        }
        let mut out = String::with_capacity(text.len() + 16);
        let mut rest = text;
        while let Some((start, end)) = next_word(rest) {
            out.push_str(&rest[..start]);
            let word = &rest[start..end];
            match self.replacement(word) {
                Some(r) => out.push_str(&r),
                None => out.push_str(word),
            }
            rest = &rest[end..];
        }
        out.push_str(rest);
        out
    }

    fn replacement(&self, word: &str) -> Option<String> {
        if word.contains('-') {
            return None;
        }
        let canonical = self.entries.get(&word.to_lowercase())?;
        let first_upper = word.chars().next()?.is_uppercase();
        let mut chars = canonical.chars();
        let head = chars.next()?;
        let mut out = String::with_capacity(canonical.len());
        if first_upper {
            out.extend(head.to_uppercase());
        } else {
            out.extend(head.to_lowercase());
        }
        out.push_str(chars.as_str());
        Some(out)
    }
}

/// Occurrences of every hyphenated compound noun in `text`.
pub fn count_compounds(text: &str) -> HashMap<String, usize> {
    let mut counts = HashMap::new();
    for token in tokenize(text) {
        if is_compound_noun(&token) {
            *counts.entry(token).or_insert(0) += 1;
        }
    }
    counts
}

/// Byte range of the next word in `s`: alphanumeric characters joined by
/// single internal hyphens, the same notion of word the tokenizer uses.
fn next_word(s: &str) -> Option<(usize, usize)> {
    let start = s.find(char::is_alphanumeric)?;
    let mut end = start;
    let mut chars = s[start..].char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c.is_alphanumeric() {
            end = start + i + c.len_utf8();
        } else if c == '-' && chars.peek().is_some_and(|&(_, n)| n.is_alphanumeric()) {
            continue;
        } else {
            break;
        }
    }
    Some((start, end))
}

/// Convenience wrapper around [`HyphenationLexicon::build`].
pub fn build_hyphenation_lexicon<S: AsRef<str> + Sync>(
    texts: &[S],
    min_count: usize,
) -> HyphenationLexicon {
    HyphenationLexicon::build(texts, min_count)
}

pub fn apply_hyphenation(text: &str, lexicon: &HyphenationLexicon) -> String {
    lexicon.apply(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lexicon() -> HyphenationLexicon {
        HyphenationLexicon::build(&["Das Bundes-Land ist groß."], 1)
    }

    #[test]
    fn builds_single_entry() {
        let lex =
            HyphenationLexicon::build(&["Das Bundes-Land ist groß. Das Bundes-Land wählt."], 1);
        assert_eq!(lex.entries.len(), 1);
        assert_eq!(lex.get("bundesland"), Some("Bundes-Land"));
        assert_eq!(lex.frequency["Bundes-Land"], 2);
    }

    #[test]
    fn empty_corpus() {
        let lex = HyphenationLexicon::build::<&str>(&[], 1);
        assert!(lex.is_empty());
    }

    #[test]
    fn most_frequent_hyphenation_wins() {
        let text = "Bundes-Land Bundes-Land Bundes-Land Bund-Esland";
        let lex = HyphenationLexicon::build(&[text], 1);
        assert_eq!(lex.get("bundesland"), Some("Bundes-Land"));
        assert_eq!(lex.frequency.len(), 2);
    }

    #[test]
    fn ties_pick_smallest_form() {
        let lex = HyphenationLexicon::build(&["Bund-Esland Bundes-Land"], 1);
        assert_eq!(lex.get("bundesland"), Some("Bund-Esland"));
    }

    #[test]
    fn min_count_filters() {
        let lex = HyphenationLexicon::build(&["Bundes-Land Kranken-Haus Kranken-Haus"], 2);
        assert_eq!(lex.get("krankenhaus"), Some("Kranken-Haus"));
        assert_eq!(lex.get("bundesland"), None);
    }

    #[test]
    fn compound_shape() {
        assert!(is_compound_noun("Bundes-Land"));
        assert!(is_compound_noun("Bundes-Tags-Wahl"));
        assert!(!is_compound_noun("Covid-19"));
        assert!(!is_compound_noun("E-Mail"));
        assert!(!is_compound_noun("bundes-Land"));
        assert!(!is_compound_noun("Haus"));
    }

    #[test]
    fn apply_examples() {
        let lex = lexicon();
        assert_eq!(lex.apply("Das Bundesland wählt"), "Das Bundes-Land wählt");
        assert_eq!(lex.apply("Das Bundes-Land wählt"), "Das Bundes-Land wählt");
        assert_eq!(lex.apply("Bundesländer"), "Bundesländer");
        assert_eq!(lex.apply("im bundesland."), "im bundes-Land.");
        assert_eq!(lex.apply("BUNDESLAND!"), "Bundes-Land!");
    }
}
