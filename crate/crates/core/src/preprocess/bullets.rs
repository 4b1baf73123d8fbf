const MARKERS: [char; 4] = ['\u{2022}', '-', '*', '\u{2013}'];

/// Returns the item text when `line` is a bullet line (`•`, `-`, `*` or `–`
/// followed by a space).
fn bullet_item(line: &str) -> Option<&str> {
    let mut item = strip_marker(line.trim_start())?;
    // nested markers ("- - x") collapse to the innermost item
    while let Some(inner) = strip_marker(item.trim_start()) {
        item = inner;
    }
    Some(item.trim())
}

fn strip_marker(line: &str) -> Option<&str> {
    let mut chars = line.chars();
    let marker = chars.next()?;
    if !MARKERS.contains(&marker) {
        return None;
    }
    let rest = chars.as_str();
    rest.starts_with(' ').then(|| &rest[1..])
}

fn ends_sentence(s: &str) -> bool {
    s.ends_with(['.', '!', '?'])
}

/// Rewrites bullet lists as comma-separated phrases.
///
/// Each maximal run of bullet lines becomes one line of items joined with
/// `", "`. When the line before the run ends with `:`, the items are appended
/// to it. The joined line gets a final `.` unless it already ends in `.`, `!`
/// or `?`. Other lines are left alone.
pub fn convert_bullets(text: &str) -> String {
    let mut out: Vec<String> = Vec::new();
    let mut items: Vec<&str> = Vec::new();

    for line in text.split('\n') {
        match bullet_item(line) {
            Some(item) => items.push(item),
            None => {
                flush_items(&mut out, &mut items);
                out.push(line.to_string());
            }
        }
    }
    flush_items(&mut out, &mut items);
    out.join("\n")
}

fn flush_items(out: &mut Vec<String>, items: &mut Vec<&str>) {
    if items.is_empty() {
        return;
    }
    let last = items.len() - 1;
    let cleaned: Vec<&str> = items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            if i == last {
                item.trim_end_matches([',', ';'])
            } else {
                item.trim_end_matches([',', ';', '.'])
            }
        })
        .map(str::trim_end)
        .filter(|item| !item.is_empty())
        .collect();
    items.clear();

    if cleaned.is_empty() {
        return;
    }
    let mut joined = cleaned.join(", ");
    if !ends_sentence(&joined) {
        joined.push('.');
    }
    match out.last_mut() {
        Some(prev) if prev.trim_end().ends_with(':') => {
            let trimmed_len = prev.trim_end().len();
            prev.truncate(trimmed_len);
            prev.push(' ');
            prev.push_str(&joined);
        }
        _ => out.push(joined),
    }
}
