use std::collections::BTreeMap;

use leichtkit_cli::config::{stamp, ConfigFile};
use leichtkit_cli::pretty::{render, table};
use proptest::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

fn scalar() -> impl Strategy<Value = Value> {
    prop_oneof![
        Just(Value::Null),
        any::<bool>().prop_map(Value::from),
        any::<i64>().prop_map(Value::from),
        (-1e6f64..1e6).prop_map(Value::from),
        "[a-zäöü \\n-]{0,80}".prop_map(Value::from),
    ]
}

fn record() -> impl Strategy<Value = Value> {
    proptest::collection::btree_map("[a-z_]{1,10}", scalar(), 1..6)
        .prop_map(|m| Value::Object(m.into_iter().collect::<Map<_, _>>()))
}

proptest! {
    #[test]
    fn tables_have_one_line_per_row(rows in proptest::collection::vec(record(), 1..12)) {
        let out = table(&rows);
        let lines: Vec<&str> = out.lines().collect();
        prop_assert_eq!(lines.len(), rows.len() + 2);
        prop_assert!(lines[1].chars().all(|c| c == '-' || c == ' '));
        let width = lines[1].chars().count();
        for l in &lines {
            prop_assert!(l.chars().count() <= width);
        }
    }

    #[test]
    fn scalar_fields_render_one_line_each(rec in record()) {
        let out = render(&rec);
        prop_assert_eq!(out.lines().count(), rec.as_object().unwrap().len());
        for line in out.lines() {
            let value = line.split("  ").last().unwrap_or("").trim();
            prop_assert!(value.chars().count() <= 48);
        }
    }

    #[test]
    fn stamps_drop_output_paths(
        settings in proptest::collection::btree_map("[a-z_]{1,8}", any::<u32>(), 0..6),
        out in "[a-z/]{1,20}",
    ) {
        let mut with_out: BTreeMap<String, Value> = settings.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let plain = stamp("stats", &with_out);
        with_out.insert("out".into(), json!(out));
        with_out.insert("out_dir".into(), json!(out));
        with_out.insert("report".into(), json!(out));
        let stamped = stamp("stats", &with_out);
        let expected: BTreeMap<_, _> = with_out.into_iter().filter(|(k, _)| !["out", "out_dir", "report"].contains(&k.as_str())).collect();
        prop_assert_eq!(&stamped["settings"], &json!(expected));
        prop_assert_eq!(stamped, plain);
    }
}

#[derive(Serialize)]
struct Flags {
    order: Option<u32>,
    min_count: Option<u32>,
}

#[derive(Deserialize, Debug, PartialEq)]
#[serde(default, deny_unknown_fields)]
struct Settings {
    order: u32,
    min_count: u32,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            order: 3,
            min_count: 2,
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn flags_override_file_which_overrides_defaults(
        file_order in proptest::option::of(1u32..6),
        flag_order in proptest::option::of(1u32..6),
        flag_min in proptest::option::of(1u32..9),
    ) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        let body = match file_order {
            Some(o) => format!("[train-lm]\norder = {o}\n"),
            None => "[train-lm]\n".to_string(),
        };
        std::fs::write(&path, body).unwrap();
        let cfg = ConfigFile::load(Some(&path)).unwrap();
        let s: Settings = cfg.resolve(&["train-lm"], &Flags { order: flag_order, min_count: flag_min }).unwrap();
        prop_assert_eq!(s.order, flag_order.or(file_order).unwrap_or(3));
        prop_assert_eq!(s.min_count, flag_min.unwrap_or(2));
    }
}
