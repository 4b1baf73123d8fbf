//! Writes the synthetic desk corpora as JSON Lines:
//!
//! ```text
//! cargo run --example desk_corpus -- <dir> [documents] [seed]
//! ```
//!
//! Produces `easy.jsonl` and `normal.jsonl` (documents with `meta.style`)
//! and `complexity.jsonl` (sentences labeled on the 1 to 7 scale).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use leichtkit::desk_corpus::{easy_documents, labeled_complexity, normal_documents};

fn write_jsonl<T: serde::Serialize>(path: &Path, items: &[T]) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for item in items {
        serde_json::to_writer(&mut w, item)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

fn main() -> std::io::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let Some(dir) = args.first() else {
        eprintln!("usage: desk_corpus <dir> [documents] [seed]");
        std::process::exit(1);
    };
    let count: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(600);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);
    let dir = Path::new(dir);
    std::fs::create_dir_all(dir)?;
    write_jsonl(&dir.join("easy.jsonl"), &easy_documents(count, seed))?;
    write_jsonl(
        &dir.join("normal.jsonl"),
        &normal_documents(count, seed + 1),
    )?;
    write_jsonl(
        &dir.join("complexity.jsonl"),
        &labeled_complexity(count, seed + 2),
    )?;
    Ok(())
}
