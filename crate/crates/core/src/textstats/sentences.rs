use std::collections::HashSet;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::Result;

const DEFAULT_ABBREVIATIONS: &str = include_str!("../../data/abbreviations.txt");

const TERMINALS: [char; 4] = ['.', '!', '?', ':'];
const CLOSERS: [char; 9] = [
    '"', '\'', ')', ']', '\u{201C}', '\u{201D}', '\u{2019}', '\u{00BB}', '\u{00AB}',
];
const OPENERS: [char; 8] = [
    '"', '\'', '(', '[', '\u{201E}', '\u{201C}', '\u{00AB}', '\u{00BB}',
];

/// Rule-based sentence splitter with an abbreviation whitelist.
///
/// A boundary follows `.`, `!`, `?` or `:` (plus any closing quotes or
/// brackets) when the next non-space character is uppercase or the text ends
/// there. Every newline is a boundary as well. A period that closes a listed
/// abbreviation never ends a sentence.
#[derive(Debug, Clone)]
pub struct SentenceSplitter {
    abbreviations: HashSet<String>,
}

impl Default for SentenceSplitter {
    fn default() -> Self {
        Self::from_list(DEFAULT_ABBREVIATIONS)
    }
}

impl SentenceSplitter {
    /// Parses an abbreviation list: one entry per line, `#` starts a comment.
    pub fn from_list(list: &str) -> Self {
        let abbreviations = list
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect();
        Self { abbreviations }
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Ok(Self::from_list(&std::fs::read_to_string(path)?))
    }

    pub fn is_abbreviation(&self, chunk: &str) -> bool {
        self.abbreviations.contains(chunk)
    }

    pub fn split<'a>(&self, text: &'a str) -> Vec<&'a str> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut sentences = Vec::new();
        let mut start = 0;
        let mut i = 0;

        while i < chars.len() {
            let (pos, c) = chars[i];
            if c == '\n' {
                push_trimmed(&mut sentences, &text[start..pos]);
                start = pos + 1;
                i += 1;
                continue;
            }
            if TERMINALS.contains(&c) {
                let mut k = i + 1;
                while k < chars.len() && CLOSERS.contains(&chars[k].1) {
                    k += 1;
                }
                let end = chars.get(k).map_or(text.len(), |&(p, _)| p);
                if self.is_boundary(text, &chars, i, k) {
                    push_trimmed(&mut sentences, &text[start..end]);
                    start = end;
                    i = k;
                    continue;
                }
            }
            i += 1;
        }
        push_trimmed(&mut sentences, &text[start..]);
        sentences
    }

    fn is_boundary(&self, text: &str, chars: &[(usize, char)], at: usize, after: usize) -> bool {
        match chars.get(after) {
            None => {}
            Some(&(_, c)) if c.is_whitespace() => {
                let next = chars[after..]
                    .iter()
                    .map(|&(_, c)| c)
                    .find(|c| !c.is_whitespace() && !OPENERS.contains(c));
                if next.is_some_and(|n| !n.is_uppercase()) {
                    return false;
                }
            }
            Some(_) => return false,
        }
        if chars[at].1 != '.' {
            return true;
        }
        let (dot_pos, _) = chars[at];
        let chunk_start = text[..dot_pos]
            .char_indices()
            .rev()
            .find(|&(_, c)| c.is_whitespace())
            .map_or(0, |(p, c)| p + c.len_utf8());
        let chunk = text[chunk_start..=dot_pos].trim_start_matches(OPENERS);
        !self.is_abbreviation(chunk)
    }
}

fn push_trimmed<'a>(out: &mut Vec<&'a str>, s: &'a str) {
    let s = s.trim();
    if !s.is_empty() {
        out.push(s);
    }
}

pub(crate) fn default_splitter() -> &'static SentenceSplitter {
    static SPLITTER: OnceLock<SentenceSplitter> = OnceLock::new();
    SPLITTER.get_or_init(SentenceSplitter::default)
}

/// Splits `text` into sentences with the bundled abbreviation list.
pub fn split_sentences(text: &str) -> Vec<&str> {
    default_splitter().split(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_plain_sentences() {
        assert_eq!(
            split_sentences("Es regnet. Wir bleiben hier."),
            ["Es regnet.", "Wir bleiben hier."]
        );
    }

    #[test]
    fn newline_is_a_boundary() {
        assert_eq!(
            split_sentences("Eine Zeile\nNoch eine Zeile"),
            ["Eine Zeile", "Noch eine Zeile"]
        );
        assert_eq!(
            split_sentences("Satz eins.\nSatz zwei.\n"),
            ["Satz eins.", "Satz zwei."]
        );
    }

    #[test]
    fn lowercase_continuation_is_not_a_boundary() {
        assert_eq!(
            split_sentences("Es kostet 3. oder 4. mal so viel."),
            ["Es kostet 3. oder 4. mal so viel."]
        );
    }

    #[test]
    fn empty_text_has_no_sentences() {
        assert!(split_sentences("").is_empty());
        assert!(split_sentences(" \n \n").is_empty());
    }

    #[test]
    fn closing_quote_stays_with_sentence() {
        assert_eq!(
            split_sentences("Er sagt: \u{201E}Komm.\u{201C} Dann geht er."),
            ["Er sagt:", "\u{201E}Komm.\u{201C}", "Dann geht er."]
        );
    }

    #[test]
    fn question_and_exclamation() {
        assert_eq!(split_sentences("Wer? Du! Gut"), ["Wer?", "Du!", "Gut"]);
        assert_eq!(split_sentences("Wirklich?! Ja."), ["Wirklich?!", "Ja."]);
    }

    #[test]
    fn custom_list_replaces_defaults() {
        let splitter = SentenceSplitter::from_list("# none\nXy.\n");
        assert_eq!(splitter.split("Das Xy. Haus"), ["Das Xy. Haus"]);
        assert_eq!(splitter.split("Dr. Meier"), ["Dr.", "Meier"]);
    }
}
