//! German text statistics: tokenization, sentence splitting, syllable
//! counting, Flesch Reading Ease (Amstad's German coefficients) and the
//! layout statistics that characterise Easy Language (one sentence per line,
//! few commas).

mod sentences;
mod syllables;
mod tokenize;

use serde::{Deserialize, Serialize};

pub use sentences::{split_sentences, SentenceSplitter};
pub use syllables::count_syllables;
pub use tokenize::{is_word, tokenize};

/// Constant term of the German reading-ease formula.
pub const FRE_BASE: f64 = 180.0;
/// Weight of the average syllables per word.
pub const FRE_SYLLABLE_WEIGHT: f64 = 58.5;

/// Tokens of a text together with sentence boundaries over them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenizedText {
    pub tokens: Vec<String>,
    /// Half-open `(start, end)` token ranges, one per sentence.
    pub sentence_spans: Vec<(usize, usize)>,
    /// Number of `\n` characters in the source text.
    pub newline_count: usize,
}

impl TokenizedText {
    pub fn new(text: &str) -> Self {
        Self::with_splitter(text, sentences::default_splitter())
    }

    pub fn with_splitter(text: &str, splitter: &SentenceSplitter) -> Self {
        let mut tokens = Vec::new();
        let mut sentence_spans = Vec::new();
        for sentence in splitter.split(text) {
            let start = tokens.len();
            tokens.extend(tokenize(sentence));
            sentence_spans.push((start, tokens.len()));
        }
        Self {
            tokens,
            sentence_spans,
            newline_count: text.matches('\n').count(),
        }
    }

    pub fn sentences(&self) -> impl Iterator<Item = &[String]> {
        self.sentence_spans.iter().map(|&(s, e)| &self.tokens[s..e])
    }
}

/// Flesch Reading Ease report.
///
/// `fre` always equals `180 - avg_sentence_length_words - 58.5 *
/// avg_syllables_per_word`. Text without words reports zeros throughout,
/// including `fre`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReadabilityReport {
    pub fre: f64,
    pub avg_sentence_length_words: f64,
    pub avg_syllables_per_word: f64,
    pub sentence_count: usize,
    pub word_count: usize,
    pub syllable_count: usize,
    pub newlines_per_sentence: f64,
}

impl ReadabilityReport {
    /// Recomputes the reading ease from the reported averages.
    pub fn recomputed_fre(&self) -> f64 {
        if self.word_count == 0 {
            return 0.0;
        }
        fre_from_averages(self.avg_sentence_length_words, self.avg_syllables_per_word)
    }
}

pub fn fre_from_averages(avg_sentence_length: f64, avg_syllables_per_word: f64) -> f64 {
    FRE_BASE - avg_sentence_length - FRE_SYLLABLE_WEIGHT * avg_syllables_per_word
}

/// Readability plus Easy Language layout statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EasyLanguageReport {
    #[serde(flatten)]
    pub readability: ReadabilityReport,
    pub newline_count: usize,
    pub comma_count: usize,
    pub commas_per_sentence: f64,
}

/// Computes the German Flesch Reading Ease of `text`.
///
/// Words are tokens containing a letter; a sentence counts when it holds at
/// least one word.
pub fn flesch_reading_ease(text: &str) -> ReadabilityReport {
    easy_language_report(text).readability
}

pub fn easy_language_report(text: &str) -> EasyLanguageReport {
    let tokenized = TokenizedText::new(text);
    report_from_tokens(&tokenized)
}

pub fn report_from_tokens(tokenized: &TokenizedText) -> EasyLanguageReport {
    let mut sentence_count = 0;
    let mut word_count = 0;
    let mut syllable_count = 0;
    let mut comma_count = 0;

    for sentence in tokenized.sentences() {
        let mut words_here = 0;
        for token in sentence {
            if token == "," {
                comma_count += 1;
            } else if is_word(token) {
                words_here += 1;
                syllable_count += count_syllables(token);
            }
        }
        if words_here > 0 {
            sentence_count += 1;
            word_count += words_here;
        }
    }

    let per_sentence = |n: usize| {
        if sentence_count == 0 {
            0.0
        } else {
            n as f64 / sentence_count as f64
        }
    };

    let (asl, asw, fre) = if word_count == 0 {
        (0.0, 0.0, 0.0)
    } else {
        let asl = word_count as f64 / sentence_count as f64;
        let asw = syllable_count as f64 / word_count as f64;
        (asl, asw, fre_from_averages(asl, asw))
    };

    EasyLanguageReport {
        readability: ReadabilityReport {
            fre,
            avg_sentence_length_words: asl,
            avg_syllables_per_word: asw,
            sentence_count,
            word_count,
            syllable_count,
            newlines_per_sentence: per_sentence(tokenized.newline_count),
        },
        newline_count: tokenized.newline_count,
        comma_count,
        commas_per_sentence: per_sentence(comma_count),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let r = flesch_reading_ease("Das Haus ist rot.");
        assert_eq!(r.avg_sentence_length_words, 4.0);
        assert_eq!(r.avg_syllables_per_word, 1.0);
        assert_eq!(r.fre, 117.5);
        assert_eq!(r.sentence_count, 1);
        assert_eq!(r.word_count, 4);
    }

    #[test]
    fn empty_text_is_zero() {
        let r = flesch_reading_ease("");
        assert_eq!(r.word_count, 0);
        assert_eq!(r.fre, 0.0);
        assert_eq!(r.avg_syllables_per_word, 0.0);
        let r = flesch_reading_ease("... !");
        assert_eq!(r.word_count, 0);
        assert_eq!(r.fre, 0.0);
    }

    #[test]
    fn longer_words_lower_the_score() {
        let simple = flesch_reading_ease("Der Hund ist da. Die Frau geht.");
        let complex = flesch_reading_ease(
            "Der Verwaltungsangestellte ist anwesend. Die Abgeordnete telefoniert.",
        );
        assert!(simple.fre > complex.fre);
    }

    #[test]
    fn newline_and_comma_counts() {
        let r = easy_language_report("Satz eins.\nSatz zwei.\n");
        assert_eq!(r.newline_count, 2);
        assert_eq!(r.readability.newlines_per_sentence, 1.0);
        let r = easy_language_report("Satz eins, und zwar, genau.");
        assert_eq!(r.commas_per_sentence, 2.0);
    }

    #[test]
    fn spans_cover_all_tokens() {
        let text = "Dr. Meier kommt. Er bringt z.B. Brot mit!\nDanach: Kaffee";
        let t = TokenizedText::new(text);
        assert_eq!(t.tokens, tokenize(text));
        let mut expected_start = 0;
        for &(s, e) in &t.sentence_spans {
            assert_eq!(s, expected_start);
            assert!(e > s);
            expected_start = e;
        }
        assert_eq!(expected_start, t.tokens.len());
        assert_eq!(t.newline_count, 1);
    }
}
