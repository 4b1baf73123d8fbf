//! Line-oriented input and buffered output.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Records parsed per batch; batches are processed in parallel and emitted
/// in input order.
const BATCH: usize = 2048;

fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::file(path, e))
}

/// Streams the non-blank lines of a JSON Lines file in batches. Each record
/// is parsed and mapped by `f` in parallel; `sink` then sees the results in
/// file order.
pub fn stream_records<T, U, F, S>(path: &Path, f: F, mut sink: S) -> CliResult<usize>
where
    T: DeserializeOwned,
    U: Send,
    F: Fn(usize, T) -> CliResult<U> + Sync,
    S: FnMut(U) -> CliResult<()>,
{
    let mut reader = open(path)?;
    let mut batch: Vec<(usize, String)> = Vec::with_capacity(BATCH);
    let mut line_no = 0;
    let mut seen = 0;
    loop {
        let mut line = String::new();
        let n = reader
            .read_line(&mut line)
            .map_err(|e| CliError::file(path, e))?;
        if n > 0 {
            line_no += 1;
            if !line.trim().is_empty() {
                batch.push((line_no, line));
            }
        }
        if batch.len() == BATCH || (n == 0 && !batch.is_empty()) {
            seen += batch.len();
            let out: Vec<CliResult<U>> = batch
                .par_drain(..)
                .map(|(no, text)| {
                    let record =
                        serde_json::from_str(&text).map_err(|e| CliError::record(path, no, e))?;
                    f(no, record)
                })
                .collect();
            for item in out {
                sink(item?)?;
            }
        }
        if n == 0 {
            return Ok(seen);
        }
    }
}

/// Number of non-blank lines.
pub fn count_records(path: &Path) -> CliResult<usize> {
    let mut n = 0;
    for line in open(path)?.lines() {
        if !line.map_err(|e| CliError::file(path, e))?.trim().is_empty() {
            n += 1;
        }
    }
    Ok(n)
}

/// Destination of a result: a file or standard output.
pub struct Output {
    path: Option<PathBuf>,
    inner: Box<dyn Write>,
}

impl Output {
    pub fn new(path: Option<&Path>) -> CliResult<Self> {
        let inner: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).map_err(|e| CliError::file(p, e))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Self {
            path: path.map(Path::to_path_buf),
            inner,
        })
    }

    fn err(&self, e: impl std::fmt::Display) -> CliError {
        match &self.path {
            Some(p) => CliError::file(p, e),
            None => CliError::Io(format!("stdout: {e}")),
        }
    }

    fn io_err(&self, e: io::Error) -> CliError {
        if e.kind() == io::ErrorKind::BrokenPipe && self.path.is_none() {
            CliError::PipeClosed
        } else {
            self.err(e)
        }
    }

    fn json_err(&self, e: serde_json::Error) -> CliError {
        match e.io_error_kind() {
            Some(kind) => self.io_err(kind.into()),
            None => self.err(e),
        }
    }

    pub fn json_line<T: Serialize>(&mut self, value: &T) -> CliResult<()> {
        serde_json::to_writer(&mut self.inner, value).map_err(|e| self.json_err(e))?;
        self.inner.write_all(b"\n").map_err(|e| self.io_err(e))
    }

    pub fn json_pretty<T: Serialize>(&mut self, value: &T) -> CliResult<()> {
        serde_json::to_writer_pretty(&mut self.inner, value).map_err(|e| self.json_err(e))?;
        self.inner.write_all(b"\n").map_err(|e| self.io_err(e))
    }

    pub fn text(&mut self, s: &str) -> CliResult<()> {
        self.inner
            .write_all(s.as_bytes())
            .map_err(|e| self.io_err(e))
    }

    pub fn writer(&mut self) -> &mut dyn Write {
        &mut self.inner
    }

    pub fn finish(mut self) -> CliResult<()> {
        self.inner.flush().map_err(|e| self.io_err(e))
    }
}

/// Writes `value` as pretty JSON to `path`.
pub fn write_json_file<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut out = Output::new(Some(path))?;
    out.json_pretty(value)?;
    out.finish()
}

/// `<out>.manifest.json` next to a non-JSON or JSON Lines artifact.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    name.push(".manifest.json");
    out.with_file_name(name)
}

pub fn read_json_file<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::file(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::file(path, e))
}
