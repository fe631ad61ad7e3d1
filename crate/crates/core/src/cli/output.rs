use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::instances::write_atomic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Rows as CSV (header always present, even with no rows) or as a pretty
/// JSON array.
pub fn render_table<T: Serialize>(header: &[&str], rows: &[T], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(header).map_err(csv_err)?;
            for r in rows {
                w.serialize(r).map_err(csv_err)?;
            }
            w.into_inner().map_err(|e| csv_err(e.into_error()))
        }
        Format::Json => render_json(rows),
    }
}

pub fn render_json<T: Serialize + ?Sized>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn csv_err(e: impl std::fmt::Display) -> crate::Error {
    crate::Error::Io(std::io::Error::other(e.to_string()))
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputDigest {
    pub file: String,
    pub sha256: String,
    pub bytes: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub params: serde_json::Value,
    pub seed: u64,
    pub version: String,
    pub outputs: Vec<OutputDigest>,
    pub wall_clock_seconds: f64,
}

/// Collects output files for one run and writes its manifest last.
pub struct Run {
    dir: PathBuf,
    subcommand: String,
    params: serde_json::Value,
    seed: u64,
    outputs: Vec<OutputDigest>,
    started: Instant,
}

impl Run {
    pub fn new(dir: &Path, subcommand: &str, params: serde_json::Value, seed: u64) -> Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            subcommand: subcommand.to_string(),
            params,
            seed,
            outputs: Vec::new(),
            started: Instant::now(),
        })
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<PathBuf> {
        let path = self.dir.join(name);
        write_atomic(&path, bytes)?;
        self.outputs.push(OutputDigest { file: name.to_string(), sha256: sha256_hex(bytes), bytes: bytes.len() });
        Ok(path)
    }

    pub fn finish(self) -> Result<PathBuf> {
        let manifest = RunManifest {
            subcommand: self.subcommand.clone(),
            params: self.params,
            seed: self.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: self.outputs,
            wall_clock_seconds: self.started.elapsed().as_secs_f64(),
        };
        let path = self.dir.join(format!("{}.manifest.json", self.subcommand));
        write_atomic(&path, &render_json(&manifest)?)?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        k: usize,
        value: f64,
    }

    #[test]
    fn empty_csv_has_header() {
        let rows: Vec<Row> = Vec::new();
        assert_eq!(render_table(&["k", "value"], &rows, Format::Csv).unwrap(), b"k,value\n");
    }

    #[test]
    fn csv_rows() {
        let out = render_table(&["k", "value"], &[Row { k: 2, value: 0.5 }], Format::Csv).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "k,value\n2,0.5\n");
    }
}
