//! Settings resolution: defaults, then the config file section for the
//! subcommand, then command-line flags.
//!
//! A config file is TOML, or JSON when its name ends in `.json`:
//!
//! ```toml
//! threads = 4
//!
//! [train-lm]
//! order = 3
//! smoothing = "witten-bell"
//!
//! [complexity.fit]
//! lambda = 0.5
//! ```

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};

const SECTIONS: [&str; 9] = [
    "preprocess",
    "split",
    "lexicon",
    "stats",
    "train-lm",
    "perplexity",
    "discriminate",
    "evaluate",
    "complexity",
];
const COMPLEXITY_SECTIONS: [&str; 3] = ["fit", "predict", "eval"];

/// Settings that name output destinations. They are left out of the
/// reproducibility stamp so an artifact does not depend on where it is written.
const OUTPUT_KEYS: [&str; 3] = ["out", "out_dir", "report"];

#[derive(Debug, Default)]
pub struct ConfigFile {
    root: Map<String, Value>,
    origin: String,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::file(path, e))?;
        let is_json = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let value: Value = if is_json {
            serde_json::from_str(&text).map_err(|e| CliError::flag("--config", e))?
        } else {
            toml::from_str(&text).map_err(|e| CliError::flag("--config", e))?
        };
        let Value::Object(root) = value else {
            return Err(CliError::flag("--config", "top level must be a table"));
        };
        let file = Self {
            root,
            origin: path.display().to_string(),
        };
        file.check_keys()?;
        Ok(file)
    }

    fn check_keys(&self) -> CliResult<()> {
        for (key, value) in &self.root {
            if key == "threads" {
                continue;
            }
            if !SECTIONS.contains(&key.as_str()) {
                return Err(self.error(format!("unknown section `{key}`")));
            }
            if !value.is_object() {
                return Err(self.error(format!("section `{key}` must be a table")));
            }
        }
        if let Some(Value::Object(c)) = self.root.get("complexity") {
            for (key, value) in c {
                if !COMPLEXITY_SECTIONS.contains(&key.as_str()) || !value.is_object() {
                    return Err(self.error(format!("unknown section `complexity.{key}`")));
                }
            }
        }
        Ok(())
    }

    fn error(&self, msg: impl std::fmt::Display) -> CliError {
        CliError::Validation(format!("--config {}: {msg}", self.origin))
    }

    pub fn threads(&self) -> CliResult<Option<usize>> {
        match self.root.get("threads") {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(|n| Some(n as usize))
                .ok_or_else(|| self.error("`threads` must be a non-negative integer")),
        }
    }

    fn section(&self, path: &[&str]) -> Map<String, Value> {
        let mut node = &self.root;
        for key in path {
            match node.get(*key) {
                Some(Value::Object(m)) => node = m,
                _ => return Map::new(),
            }
        }
        node.clone()
    }

    /// Overlays `flags` (unset flags serialize as null and are skipped) on
    /// the config section at `path` and deserializes the result.
    pub fn resolve<A: Serialize, S: DeserializeOwned>(
        &self,
        path: &[&str],
        flags: &A,
    ) -> CliResult<S> {
        let mut merged = self.section(path);
        let Value::Object(flags) = serde_json::to_value(flags).expect("flag structs serialize")
        else {
            unreachable!("flag structs serialize to objects");
        };
        for (k, v) in flags {
            if !v.is_null() {
                merged.insert(k, v);
            }
        }
        let de = Value::Object(merged);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let key = e.path().to_string();
            let section = path.join(".");
            let msg = e.into_inner();
            CliError::Validation(format!(
                "--{} (config [{section}]): {msg}",
                key.replace('_', "-")
            ))
        })
    }
}

/// The reproducibility stamp embedded in every artifact.
pub fn stamp<S: Serialize>(command: &str, settings: &S) -> Value {
    let mut settings = serde_json::to_value(settings).expect("settings serialize");
    if let Value::Object(m) = &mut settings {
        for k in OUTPUT_KEYS {
            m.remove(k);
        }
    }
    json!({
        "tool": "leichtkit",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "settings": settings,
    })
}
