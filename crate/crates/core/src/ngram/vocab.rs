use std::collections::HashMap;

use serde::{Deserialize, Serialize};

pub const UNK: &str = "<unk>";
pub const BOS: &str = "<s>";
pub const EOS: &str = "</s>";

pub const UNK_ID: u32 = 0;
pub const BOS_ID: u32 = 1;
pub const EOS_ID: u32 = 2;

fn is_reserved(token: &str) -> bool {
    matches!(token, UNK | BOS | EOS)
}

/// Token vocabulary. Ids 0..3 are `<unk>`, `<s>`, `</s>`; the remaining
/// types follow in lexicographic order so that ids never depend on hash
/// iteration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<String>", into = "Vec<String>")]
pub struct Vocab {
    tokens: Vec<String>,
    index: HashMap<String, u32>,
}

impl From<Vec<String>> for Vocab {
    fn from(tokens: Vec<String>) -> Self {
        let index = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u32))
            .collect();
        Self { tokens, index }
    }
}

impl From<Vocab> for Vec<String> {
    fn from(v: Vocab) -> Self {
        v.tokens
    }
}

impl Vocab {
    /// Builds a vocabulary from the given types (duplicates and reserved
    /// symbols are ignored).
    pub fn from_types<I, S>(types: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut types: Vec<String> = types
            .into_iter()
            .map(Into::into)
            .filter(|t| !is_reserved(t))
            .collect();
        types.sort();
        types.dedup();
        let mut tokens = vec![UNK.to_string(), BOS.to_string(), EOS.to_string()];
        tokens.extend(types);
        tokens.into()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Number of symbols a model can predict: everything except `<s>`.
    pub fn predictable_len(&self) -> usize {
        self.tokens.len() - 1
    }

    pub fn id(&self, token: &str) -> u32 {
        if is_reserved(token) {
            return UNK_ID;
        }
        self.index.get(token).copied().unwrap_or(UNK_ID)
    }

    pub fn token(&self, id: u32) -> Option<&str> {
        self.tokens.get(id as usize).map(String::as_str)
    }

    pub fn contains(&self, token: &str) -> bool {
        self.index.contains_key(token)
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub(crate) fn is_well_formed(&self) -> bool {
        self.tokens.len() >= 3
            && self.tokens[0] == UNK
            && self.tokens[1] == BOS
            && self.tokens[2] == EOS
            && self.index.len() == self.tokens.len()
    }
}

/// Counts token frequencies ahead of vocabulary construction.
#[derive(Debug, Clone, Default)]
pub struct VocabBuilder {
    counts: HashMap<String, u64>,
}

impl VocabBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add<S: AsRef<str>>(&mut self, tokens: &[S]) {
        for t in tokens {
            *self.counts.entry(t.as_ref().to_string()).or_insert(0) += 1;
        }
    }

    /// Keeps types seen at least `min_count` times; rarer ones become `<unk>`.
    pub fn build(&self, min_count: u64) -> Vocab {
        Vocab::from_types(
            self.counts
                .iter()
                .filter(|&(_, &n)| n >= min_count.max(1))
                .map(|(t, _)| t.clone()),
        )
    }
}
