//! Where results go, and the JSON/CSV encodings that stamp every row with the manifest id.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;

use crate::config::Settings;
use crate::manifest::{RunManifest, FORMAT_VERSION};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Serialize)]
struct Tagged<'a, T> {
    #[serde(flatten)]
    row: &'a T,
    manifest: &'a str,
    format_version: u32,
}

pub enum Target {
    Stdout,
    File(PathBuf),
}

impl Target {
    /// `--out` if given (relative paths land in the output directory), else
    /// `<out_dir>/<default_name>`, else standard output.
    pub fn resolve(out: Option<&Path>, default_name: &str, settings: &Settings) -> Target {
        match (out, &settings.out_dir) {
            (Some(p), Some(dir)) if p.is_relative() => Target::File(dir.join(p)),
            (Some(p), _) => Target::File(p.to_path_buf()),
            (None, Some(dir)) => Target::File(dir.join(default_name)),
            (None, None) => Target::Stdout,
        }
    }

    /// Format from the flag, else from the file extension, else `fallback`.
    pub fn format(&self, flag: Option<Format>, fallback: Format) -> Format {
        flag.unwrap_or_else(|| match self {
            Target::File(p) if p.extension().is_some_and(|e| e == "csv") => Format::Csv,
            Target::File(p) if p.extension().is_some_and(|e| e == "json") => Format::Json,
            _ => fallback,
        })
    }

    pub fn write(&self, stdout: &mut dyn Write, body: &[u8]) -> Result<(), CliError> {
        match self {
            Target::Stdout => {
                stdout.write_all(body).and_then(|_| stdout.flush()).map_err(|e| CliError::env(format!("stdout: {e}")))
            }
            Target::File(p) => write_file(p, body),
        }
    }

    /// Writes the body, and for file targets a `<file>.manifest.json` next to it.
    pub fn emit(&self, stdout: &mut dyn Write, body: &[u8], manifest: &mut RunManifest) -> Result<(), CliError> {
        self.write(stdout, body)?;
        if let Target::File(p) = self {
            manifest.outputs.push(p.display().to_string());
            manifest.finished_unix_ms = crate::manifest::unix_ms();
            let mut side = p.clone().into_os_string();
            side.push(".manifest.json");
            let text = serde_json::to_string_pretty(manifest).expect("manifest serializes");
            write_file(Path::new(&side), format!("{text}\n").as_bytes())?;
        }
        Ok(())
    }
}

fn write_file(p: &Path, body: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::env(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(p, body).map_err(|e| CliError::env(format!("{}: {e}", p.display())))
}

pub fn json_one<T: Serialize>(row: &T, manifest: &str) -> Vec<u8> {
    let tagged = Tagged { row, manifest, format_version: FORMAT_VERSION };
    let mut s = serde_json::to_string_pretty(&tagged).expect("row serializes");
    s.push('\n');
    s.into_bytes()
}

pub fn json_rows<T: Serialize>(rows: &[T], manifest: &str) -> Vec<u8> {
    let tagged: Vec<Tagged<T>> =
        rows.iter().map(|row| Tagged { row, manifest, format_version: FORMAT_VERSION }).collect();
    let mut s = serde_json::to_string_pretty(&tagged).expect("rows serialize");
    s.push('\n');
    s.into_bytes()
}

/// Header row from the field names of `T`, followed by `manifest,format_version`.
pub fn csv_rows<T: Serialize>(rows: &[T], manifest: &str) -> Result<Vec<u8>, CliError> {
    let mut plain = csv::Writer::from_writer(Vec::new());
    for r in rows {
        plain.serialize(r).map_err(|e| CliError::env(format!("csv: {e}")))?;
    }
    let plain = plain.into_inner().map_err(|e| CliError::env(format!("csv: {e}")))?;
    let mut out = csv::Writer::from_writer(Vec::new());
    let version = FORMAT_VERSION.to_string();
    for (i, rec) in csv::ReaderBuilder::new().has_headers(false).from_reader(plain.as_slice()).records().enumerate() {
        let mut rec = rec.map_err(|e| CliError::env(format!("csv: {e}")))?;
        if i == 0 {
            rec.push_field("manifest");
            rec.push_field("format_version");
        } else {
            rec.push_field(manifest);
            rec.push_field(&version);
        }
        out.write_record(&rec).map_err(|e| CliError::env(format!("csv: {e}")))?;
    }
    out.into_inner().map_err(|e| CliError::env(format!("csv: {e}")))
}

pub fn encode_rows<T: Serialize>(rows: &[T], manifest: &str, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => Ok(json_rows(rows, manifest)),
        Format::Csv => csv_rows(rows, manifest),
    }
}
