//! Model files.
//!
//! Layout: the ASCII magic `NGLM`, one format-version byte, the payload
//! length as a little-endian `u64`, a JSON payload, and the SHA-256 digest of
//! the payload. The payload lists the vocabulary in id order and every count
//! table with contexts and successors sorted, so equal models produce equal
//! bytes.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::model::{CountTable, NgramModel, Smoothing, Successors, MAX_ORDER};
use super::vocab::Vocab;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"NGLM";
pub const FORMAT_VERSION: u8 = 1;

const HEADER_LEN: usize = 4 + 1 + 8;
const DIGEST_LEN: usize = 32;

/// A context and its sorted `(successor, count)` pairs.
type Row = (Vec<u32>, Vec<(u32, u64)>);

#[derive(Serialize, Deserialize)]
struct Payload {
    order: usize,
    smoothing: Smoothing,
    trained_tokens: u64,
    vocab: Vocab,
    /// Per order, sorted by context.
    counts: Vec<Vec<Row>>,
}

fn sorted_table(table: &CountTable) -> Vec<Row> {
    let mut rows: Vec<Row> = table
        .iter()
        .map(|(ctx, succ)| {
            let mut s: Vec<(u32, u64)> = succ.iter().map(|(&w, &c)| (w, c)).collect();
            s.sort_unstable();
            (ctx.clone(), s)
        })
        .collect();
    rows.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    rows
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

impl NgramModel {
    fn payload_bytes(&self) -> Vec<u8> {
        let payload = Payload {
            order: self.order,
            smoothing: self.smoothing,
            trained_tokens: self.trained_tokens,
            vocab: self.vocab.clone(),
            counts: self.counts.iter().map(sorted_table).collect(),
        };
        serde_json::to_vec(&payload).expect("model payload serializes")
    }

    /// Serializes the model into the versioned `NGLM` format.
    pub fn to_bytes(&self) -> Vec<u8> {
        let payload = self.payload_bytes();
        let mut out = Vec::with_capacity(HEADER_LEN + payload.len() + DIGEST_LEN);
        out.extend_from_slice(MAGIC);
        out.push(FORMAT_VERSION);
        out.extend_from_slice(&(payload.len() as u64).to_le_bytes());
        out.extend_from_slice(&payload);
        out.extend_from_slice(&Sha256::digest(&payload));
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::Load("file shorter than the NGLM header".into()));
        }
        if &bytes[..4] != MAGIC {
            return Err(Error::Load("missing NGLM magic".into()));
        }
        if bytes[4] != FORMAT_VERSION {
            return Err(Error::Load(format!(
                "unsupported format version {} (expected {FORMAT_VERSION})",
                bytes[4]
            )));
        }
        let len = u64::from_le_bytes(bytes[5..HEADER_LEN].try_into().unwrap());
        let expected = (HEADER_LEN as u64)
            .checked_add(len)
            .and_then(|n| n.checked_add(DIGEST_LEN as u64));
        if expected != Some(bytes.len() as u64) {
            return Err(Error::Load(format!(
                "length mismatch: header announces {len} payload bytes, file has {}",
                bytes.len()
            )));
        }
        let payload = &bytes[HEADER_LEN..bytes.len() - DIGEST_LEN];
        if Sha256::digest(payload).as_slice() != &bytes[bytes.len() - DIGEST_LEN..] {
            return Err(Error::Load("checksum mismatch".into()));
        }
        let p: Payload = serde_json::from_slice(payload)
            .map_err(|e| Error::Load(format!("bad payload: {e}")))?;

        if !(1..=MAX_ORDER).contains(&p.order) || p.counts.len() != p.order {
            return Err(Error::Load(format!("invalid order {}", p.order)));
        }
        if !p.vocab.is_well_formed() {
            return Err(Error::Load("vocabulary lacks reserved symbols".into()));
        }
        let vocab_len = p.vocab.len() as u32;
        let mut counts = Vec::with_capacity(p.order);
        for (k, rows) in p.counts.into_iter().enumerate() {
            let mut table = CountTable::with_capacity(rows.len());
            for (ctx, succ) in rows {
                if ctx.len() != k
                    || ctx
                        .iter()
                        .chain(succ.iter().map(|(w, _)| w))
                        .any(|&id| id >= vocab_len)
                {
                    return Err(Error::Load(format!("malformed order-{} entry", k + 1)));
                }
                table.insert(ctx, succ.into_iter().collect::<Successors>());
            }
            counts.push(table);
        }
        Ok(NgramModel::from_parts(
            p.order,
            p.vocab,
            p.smoothing,
            p.trained_tokens,
            counts,
        ))
    }

    /// Short stable identifier: the first 16 hex digits of the payload digest.
    pub fn fingerprint(&self) -> String {
        hex(&Sha256::digest(self.payload_bytes())[..8])
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        std::fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }
}
