//! Plain-text tables for `--pretty`.

use serde_json::{Map, Value};

const MAX_CELL: usize = 48;

fn cell(v: &Value) -> String {
    let s = match v {
        Value::Null => "-".to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (Some(i), _, _) => i.to_string(),
            (_, Some(u), _) => u.to_string(),
            (_, _, Some(f)) => format!("{f:.4}"),
            _ => n.to_string(),
        },
        Value::String(s) => s.replace('\n', "\\n"),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(", "),
        Value::Object(_) => v.to_string(),
    };
    if s.chars().count() > MAX_CELL {
        let cut: String = s.chars().take(MAX_CELL - 3).collect();
        format!("{cut}...")
    } else {
        s
    }
}

fn is_table(v: &Value) -> bool {
    matches!(v, Value::Array(a) if !a.is_empty() && a.iter().all(Value::is_object))
}

fn collect(
    prefix: &str,
    map: &Map<String, Value>,
    pairs: &mut Vec<(String, String)>,
    tables: &mut Vec<(String, Vec<Value>)>,
) {
    for (k, v) in map {
        let key = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match v {
            Value::Object(inner) => collect(&key, inner, pairs, tables),
            Value::Array(rows) if is_table(v) => tables.push((key, rows.clone())),
            _ => pairs.push((key, cell(v))),
        }
    }
}

/// Aligned columns with a header row.
pub fn table(rows: &[Value]) -> String {
    let mut columns: Vec<String> = Vec::new();
    let mut flat: Vec<Map<String, Value>> = Vec::new();
    for row in rows {
        let mut pairs = Vec::new();
        let mut nested = Vec::new();
        if let Value::Object(m) = row {
            collect("", m, &mut pairs, &mut nested);
        }
        let mut out = Map::new();
        for (k, v) in pairs {
            if !columns.contains(&k) {
                columns.push(k.clone());
            }
            out.insert(k, Value::String(v));
        }
        flat.push(out);
    }
    let cells: Vec<Vec<String>> = flat
        .iter()
        .map(|m| {
            columns
                .iter()
                .map(|c| m.get(c).and_then(Value::as_str).unwrap_or("-").to_string())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .chain([c.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |items: &[String]| {
        let mut s = items
            .iter()
            .zip(&widths)
            .map(|(x, w)| format!("{x:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(&columns);
    out.push_str(&line(
        &widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>(),
    ));
    for r in &cells {
        out.push_str(&line(r));
    }
    out
}

/// Renders a JSON result: scalar fields as a key/value list, arrays of
/// records as tables below it.
pub fn render(value: &Value) -> String {
    match value {
        Value::Array(rows) if is_table(value) => table(rows),
        Value::Object(map) => {
            let mut pairs = Vec::new();
            let mut tables = Vec::new();
            collect("", map, &mut pairs, &mut tables);
            let width = pairs
                .iter()
                .map(|(k, _)| k.chars().count())
                .max()
                .unwrap_or(0);
            let mut out = String::new();
            for (k, v) in pairs {
                out.push_str(&format!("{k:<width$}  {v}\n"));
            }
            for (name, rows) in tables {
                out.push_str(&format!("\n{name}\n"));
                out.push_str(&table(&rows));
            }
            out
        }
        other => format!("{}\n", cell(other)),
    }
}
