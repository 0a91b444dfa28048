//! Checkpoint files.
//!
//! ```text
//! ucslab-checkpoint
//! version=1
//! n=5
//! strategy=recursive
//! token=v1/5/r/7/0-3968/212/-
//! payload={...}
//! sha256=<hex digest of every preceding line, newlines included>
//! ```
//!
//! `payload` is opaque to this module; the analysis driver keeps its partial results there.

use std::fs;
use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

use super::cursor::EnumerationCursor;
use super::Strategy;

pub const CHECKPOINT_MAGIC: &str = "ucslab-checkpoint";
pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub n: u32,
    pub strategy: Strategy,
    pub token: EnumerationCursor,
    pub payload: String,
}

fn digest(body: &str) -> String {
    Sha256::digest(body.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

impl Checkpoint {
    pub fn encode(&self) -> String {
        debug_assert!(!self.payload.contains('\n'));
        let body = format!(
            "{CHECKPOINT_MAGIC}\nversion={CHECKPOINT_VERSION}\nn={}\nstrategy={}\ntoken={}\npayload={}\n",
            self.n,
            self.strategy.name(),
            self.token,
            self.payload
        );
        let sum = digest(&body);
        format!("{body}sha256={sum}\n")
    }

    pub fn decode(text: &str) -> Result<Self> {
        let corrupt = |why: &str| Error::CheckpointCorrupt(why.to_string());
        let mut lines = text.split_inclusive('\n');
        let mut body = String::new();
        let magic = lines.next().ok_or_else(|| corrupt("empty file"))?;
        if magic.trim_end() != CHECKPOINT_MAGIC {
            return Err(corrupt("bad magic line"));
        }
        body.push_str(magic);
        let mut field = |key: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| corrupt("truncated"))?;
            body.push_str(line);
            line.trim_end_matches('\n')
                .strip_prefix(key)
                .and_then(|rest| rest.strip_prefix('='))
                .map(str::to_string)
                .ok_or_else(|| corrupt(&format!("expected {key}= line")))
        };
        let version: u32 = field("version")?.parse().map_err(|_| corrupt("bad version"))?;
        if version != CHECKPOINT_VERSION {
            return Err(Error::CheckpointVersion { found: version, expected: CHECKPOINT_VERSION });
        }
        let n: u32 = field("n")?.parse().map_err(|_| corrupt("bad n"))?;
        let strategy = field("strategy")?;
        let token = field("token")?;
        let payload = field("payload")?;
        let sum = lines
            .next()
            .and_then(|l| l.trim_end().strip_prefix("sha256="))
            .ok_or_else(|| corrupt("missing checksum"))?
            .to_string();
        if lines.next().is_some() {
            return Err(corrupt("trailing data"));
        }
        if sum != digest(&body) {
            return Err(corrupt("checksum mismatch"));
        }
        let strategy = Strategy::from_name(&strategy).ok_or_else(|| corrupt("bad strategy"))?;
        let token: EnumerationCursor = token.parse().map_err(|e| corrupt(&format!("bad token: {e}")))?;
        if token.n() != n || token.strategy() != strategy {
            return Err(corrupt("header disagrees with token"));
        }
        Ok(Checkpoint { n, strategy, token, payload })
    }

    /// Writes via a temporary file and rename so a crash never leaves a torn checkpoint.
    pub fn write(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(self.encode().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Reads a checkpoint and checks it was written for the same `n` and strategy.
    pub fn read(path: &Path, n: u32, strategy: Strategy) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let cp = Checkpoint::decode(&text)?;
        if cp.n != n || cp.strategy != strategy {
            return Err(Error::CheckpointMismatch(format!(
                "checkpoint is for n={} {}, run is n={} {}",
                cp.n,
                cp.strategy.name(),
                n,
                strategy.name()
            )));
        }
        Ok(cp)
    }
}
