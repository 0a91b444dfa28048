use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::Settings;

/// Version of every JSON/CSV layout this binary writes.
pub const FORMAT_VERSION: u32 = 1;

/// Hash of the command and the parameters that determine the result. Worker count, paths
/// and timestamps are left out so that equal runs carry equal ids.
pub fn manifest_id(command: &str, params: &Value) -> String {
    let key = serde_json::json!({ "format_version": FORMAT_VERSION, "command": command, "params": params });
    let digest = Sha256::digest(key.to_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn unix_ms() -> u128 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Totals {
    pub families_scanned: u64,
    pub classes_scanned: u64,
    pub passed: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub format_version: u32,
    pub manifest_id: String,
    pub tool_version: &'static str,
    pub command: String,
    pub argv: Vec<String>,
    pub params: Value,
    pub config: Settings,
    pub n: Option<u32>,
    pub strategy: &'static str,
    pub workers: usize,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub totals: Totals,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn start(command: &str, params: Value, config: &Settings, n: Option<u32>) -> Self {
        RunManifest {
            format_version: FORMAT_VERSION,
            manifest_id: manifest_id(command, &params),
            tool_version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            argv: std::env::args().collect(),
            params,
            config: config.clone(),
            n,
            strategy: "recursive",
            workers: config.workers,
            started_unix_ms: unix_ms(),
            finished_unix_ms: 0,
            totals: Totals::default(),
            outputs: Vec::new(),
        }
    }
}
