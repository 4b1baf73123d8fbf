//! Removal of web noise: HTML/XML tags, entities, URLs, control characters
//! and irregular whitespace.

use std::borrow::Cow;
use std::sync::OnceLock;

use regex::Regex;

/// Upper bound on cleaning passes. Each pass removes every match it sees, so
/// only inputs that build new markup out of removed markup need more than two.
const MAX_PASSES: usize = 16;

const BLOCK_TAGS: &[&str] = &[
    "address",
    "article",
    "aside",
    "blockquote",
    "br",
    "dd",
    "div",
    "dl",
    "dt",
    "footer",
    "h1",
    "h2",
    "h3",
    "h4",
    "h5",
    "h6",
    "header",
    "hr",
    "main",
    "nav",
    "ol",
    "p",
    "section",
    "table",
    "title",
    "tr",
    "ul",
];
const SKIPPED_CONTENT_TAGS: &[&str] = &["script", "style", "noscript"];

fn entity_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"&(?:[A-Za-z][A-Za-z0-9]{0,31}|#[0-9]{1,8}|#[xX][0-9A-Fa-f]{1,7});").unwrap()
    })
}

fn url_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r#"(?i)\b(?:https?://|www\.)\S*[^\s.,;:!?)\]}'"»«“”„]"#).unwrap())
}

fn tag_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"<[A-Za-z/!?][^<>]*>").unwrap())
}

/// Cleans raw web text until it is stable under further cleaning.
///
/// Tags are removed (block-level tags become line breaks, `<li>` becomes a
/// `•` bullet line), comments and script/style bodies are dropped, known
/// entities are decoded and unknown ones dropped, `http(s)://` and `www.`
/// URLs are removed, control characters other than newlines are dropped and
/// whitespace is collapsed: spaces within a line, newlines to a single `\n`.
pub fn strip_markup(raw: &str) -> String {
    let mut current = clean_pass(raw);
    for _ in 0..MAX_PASSES {
        let next = clean_pass(&current);
        if next == current {
            break;
        }
        current = next;
    }
    current
}

/// Reports whether `text` still contains anything `strip_markup` removes.
pub fn contains_markup(text: &str) -> bool {
    tag_re().is_match(text)
        || entity_re().is_match(text)
        || url_re().is_match(text)
        || text.chars().any(|c| c.is_control() && c != '\n')
}

fn clean_pass(text: &str) -> String {
    let text = text.replace("\r\n", "\n").replace('\r', "\n");
    let text = decode_entities(&text);
    let text = remove_tags(&text);
    let text = url_re().replace_all(&text, "");
    normalize_whitespace(&text)
}

fn decode_entities(text: &str) -> Cow<'_, str> {
    entity_re().replace_all(text, |caps: &regex::Captures| {
        let entity = &caps[0];
        let decoded = html_escape::decode_html_entities(entity);
        if decoded == entity {
            String::new()
        } else {
            decoded.into_owned()
        }
    })
}

fn remove_tags(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;

    while let Some(lt) = rest.find('<') {
        out.push_str(&rest[..lt]);
        let tail = &rest[lt..];

        if let Some(body) = tail.strip_prefix("<!--") {
            if let Some(end) = body.find("-->") {
                rest = &body[end + 3..];
                continue;
            }
        }

        let Some(len) = tag_len(tail) else {
            out.push('<');
            rest = &tail[1..];
            continue;
        };
        let tag = &tail[1..len - 1];
        let closing = tag.starts_with('/');
        let name: String = tag
            .trim_start_matches('/')
            .chars()
            .take_while(char::is_ascii_alphanumeric)
            .map(|c| c.to_ascii_lowercase())
            .collect();
        rest = &tail[len..];

        if !closing && !tag.ends_with('/') && SKIPPED_CONTENT_TAGS.contains(&name.as_str()) {
            if let Some(end) = find_closing_tag(rest, &name) {
                rest = &rest[end..];
            }
            continue;
        }

        if name == "li" && !closing {
            out.push_str("\n\u{2022} ");
        } else if name == "li" || BLOCK_TAGS.contains(&name.as_str()) {
            out.push('\n');
        }
    }
    out.push_str(rest);
    out
}

/// Byte length of the tag starting at `s[0] == '<'`, if it is one.
fn tag_len(s: &str) -> Option<usize> {
    let mut chars = s.char_indices().skip(1);
    let (_, first) = chars.next()?;
    if !(first.is_ascii_alphabetic() || matches!(first, '/' | '!' | '?')) {
        return None;
    }
    for (i, c) in s.char_indices().skip(1) {
        match c {
            '>' => return Some(i + 1),
            '<' => return None,
            _ => {}
        }
    }
    None
}

/// Byte offset just past `</name ...>` in `s`, matched case-insensitively.
fn find_closing_tag(s: &str, name: &str) -> Option<usize> {
    let lower = s.to_ascii_lowercase();
    let needle = format!("</{name}");
    let start = lower.find(&needle)?;
    let close = lower[start..].find('>')?;
    Some(start + close + 1)
}

fn normalize_whitespace(text: &str) -> String {
    let mut lines = Vec::new();
    for line in text.split('\n') {
        let cleaned: String = line
            .chars()
            .filter(|&c| !c.is_control() || c == '\t')
            .collect();
        let joined = cleaned.split_whitespace().collect::<Vec<_>>().join(" ");
        if !joined.is_empty() {
            lines.push(joined);
        }
    }
    lines.join("\n")
}
