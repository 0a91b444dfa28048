//! Settings resolved from flags, `UCSLAB_*` environment variables, a TOML file and defaults,
//! in that order of precedence. Flags and environment variables are merged by clap before
//! they get here.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use ucslab_core::driver::default_workers;
use ucslab_core::enumerate::DEFAULT_MAX_N;

use crate::CliError;

pub const DEFAULT_PROGRESS_SECS: u64 = 5;
pub const DEFAULT_BATCH_UNITS: u64 = 128;

/// Keys accepted in the config file. Unknown keys are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub max_n: Option<u32>,
    pub workers: Option<usize>,
    pub out_dir: Option<PathBuf>,
    pub progress_secs: Option<u64>,
    pub batch_units: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::usage(format!("bad config {}: {e}", path.display())))
    }
}

/// Values from flags or the environment; `None` when neither was given.
#[derive(Debug, Default)]
pub struct Overrides {
    pub max_n: Option<u32>,
    pub workers: Option<usize>,
    pub out_dir: Option<PathBuf>,
    pub progress_secs: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Settings {
    pub max_n: u32,
    pub workers: usize,
    pub out_dir: Option<PathBuf>,
    pub progress_secs: u64,
    pub batch_units: u64,
    pub config_file: Option<PathBuf>,
}

impl Settings {
    pub fn resolve(over: Overrides, file: Option<(&Path, FileConfig)>) -> Result<Self, CliError> {
        let (config_file, file) = match file {
            Some((p, f)) => (Some(p.to_path_buf()), f),
            None => (None, FileConfig::default()),
        };
        let s = Settings {
            max_n: over.max_n.or(file.max_n).unwrap_or(DEFAULT_MAX_N),
            workers: over.workers.or(file.workers).unwrap_or_else(default_workers),
            out_dir: over.out_dir.or(file.out_dir),
            progress_secs: over.progress_secs.or(file.progress_secs).unwrap_or(DEFAULT_PROGRESS_SECS),
            batch_units: file.batch_units.unwrap_or(DEFAULT_BATCH_UNITS),
            config_file,
        };
        if s.workers == 0 {
            return Err(CliError::usage("workers must be at least 1"));
        }
        if s.batch_units == 0 {
            return Err(CliError::usage("batch_units must be at least 1"));
        }
        Ok(s)
    }
}
