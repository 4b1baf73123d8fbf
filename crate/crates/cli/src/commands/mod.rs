pub mod complexity;
pub mod corpus;
pub mod evaluate;
pub mod lm;

use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::config::ConfigFile;
use crate::error::{CliError, CliResult};
use crate::io::{write_json_file, Output};
use crate::pretty::render;

pub struct Ctx {
    pub config: ConfigFile,
    pub pretty: bool,
}

impl Ctx {
    /// Writes a JSON result to `out` when given, and to stdout otherwise.
    /// With `--pretty` stdout always gets a table.
    pub fn emit(&self, out: Option<&Path>, value: &Value) -> CliResult<()> {
        if let Some(path) = out {
            write_json_file(path, value)?;
        }
        if out.is_none() || self.pretty {
            let mut stdout = Output::new(None)?;
            if self.pretty {
                stdout.text(&render(value))?;
            } else {
                stdout.json_pretty(value)?;
            }
            stdout.finish()?;
        }
        Ok(())
    }
}

/// Per-record output: JSON Lines to a file or stdout, or a buffered table on
/// stdout with `--pretty`. A file destination gets a manifest sidecar.
pub struct RecordSink {
    out: Option<Output>,
    rows: Vec<Value>,
}

impl RecordSink {
    pub fn new(ctx: &Ctx, path: Option<&Path>) -> CliResult<Self> {
        let out = if path.is_none() && ctx.pretty {
            None
        } else {
            Some(Output::new(path)?)
        };
        Ok(Self {
            out,
            rows: Vec::new(),
        })
    }

    pub fn output(&mut self) -> Option<&mut Output> {
        self.out.as_mut()
    }

    pub fn push<T: serde::Serialize>(&mut self, record: &T) -> CliResult<()> {
        match &mut self.out {
            Some(out) => out.json_line(record),
            None => {
                self.rows
                    .push(serde_json::to_value(record).expect("records serialize"));
                Ok(())
            }
        }
    }

    pub fn finish(self, ctx: &Ctx, path: Option<&Path>, manifest: &Value) -> CliResult<()> {
        match self.out {
            Some(out) => out.finish()?,
            None => {
                let mut stdout = Output::new(None)?;
                stdout.text(&crate::pretty::table(&self.rows))?;
                stdout.finish()?;
            }
        }
        if let Some(path) = path {
            ctx.emit(Some(&crate::io::manifest_path(path)), manifest)?;
        }
        Ok(())
    }
}

pub fn require<'a>(value: &'a Option<PathBuf>, flag: &str) -> CliResult<&'a Path> {
    value
        .as_deref()
        .ok_or_else(|| CliError::flag(flag, "required (on the command line or in the config file)"))
}
