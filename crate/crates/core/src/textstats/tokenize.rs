/// Splits text into word and punctuation tokens.
///
/// Words are maximal runs of alphanumeric characters. Hyphens and apostrophes
/// stay inside a word when they sit between two alphanumeric characters
/// (`Bundes-Land`, `geht's`), and `.`/`,` stay inside a number when they sit
/// between two digits (`3,5`, `1.000`). Every other non-whitespace character
/// becomes a single-character token.
pub fn tokenize(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();

    for (i, &c) in chars.iter().enumerate() {
        if c.is_whitespace() {
            flush(&mut current, &mut tokens);
            continue;
        }
        if c.is_alphanumeric() {
            current.push(c);
            continue;
        }
        let prev = current.chars().last();
        let next = chars.get(i + 1).copied();
        let joins = match c {
            '-' | '\'' | '\u{2019}' => {
                prev.is_some_and(char::is_alphanumeric) && next.is_some_and(char::is_alphanumeric)
            }
            '.' | ',' => {
                prev.is_some_and(|p| p.is_ascii_digit()) && next.is_some_and(|n| n.is_ascii_digit())
            }
            _ => false,
        };
        if joins {
            current.push(c);
        } else {
            flush(&mut current, &mut tokens);
            tokens.push(c.to_string());
        }
    }
    flush(&mut current, &mut tokens);
    tokens
}

fn flush(current: &mut String, tokens: &mut Vec<String>) {
    if !current.is_empty() {
        tokens.push(std::mem::take(current));
    }
}

/// A token counts as a word when it contains at least one letter.
pub fn is_word(token: &str) -> bool {
    token.chars().any(char::is_alphabetic)
}
