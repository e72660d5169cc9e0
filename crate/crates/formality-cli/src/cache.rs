//! Persistent result cache: one file per record, named by the SHA-256 of
//! the canonical problem description.
//!
//! A record stores both renderings of the report verbatim, so a warm-cache
//! invocation reprints exactly the bytes of the original run (whose timings
//! it therefore also shows).  Records from other engine versions live under
//! different keys and are never returned; corrupt records are ignored and
//! recomputed.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

pub const CACHE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheRecord {
    pub schema_version: u32,
    pub engine_version: String,
    /// The canonical problem description whose digest names this file.
    pub problem: String,
    pub created_unix: u64,
    /// Structured report, byte-exact.
    pub json: String,
    /// Human-readable report, byte-exact.
    pub human: String,
}

impl CacheRecord {
    pub fn new(problem: String, json: String, human: String) -> Self {
        Self {
            schema_version: CACHE_SCHEMA_VERSION,
            engine_version: formality_core::ENGINE_VERSION.to_string(),
            problem,
            created_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            json,
            human,
        }
    }
}

pub fn digest(problem: &str) -> String {
    hex::encode(Sha256::digest(problem.as_bytes()))
}

fn record_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// Returns the stored record for this key, or `None` when absent, corrupt,
/// from another cache schema, or mismatched against the key's description.
pub fn lookup(dir: &Path, key: &str, problem: &str) -> Option<CacheRecord> {
    let bytes = fs::read(record_path(dir, key)).ok()?;
    let record: CacheRecord = serde_json::from_slice(&bytes).ok()?;
    if record.schema_version != CACHE_SCHEMA_VERSION
        || record.engine_version != formality_core::ENGINE_VERSION
        || record.problem != problem
    {
        return None;
    }
    Some(record)
}

/// Atomic write: temp file in the target directory, then rename.
pub fn store(dir: &Path, key: &str, record: &CacheRecord) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".{key}.tmp"));
    let body = serde_json::to_vec_pretty(record).expect("cache record serializes");
    fs::write(&tmp, body)?;
    fs::rename(&tmp, record_path(dir, key))
}
