//! On-disk cache of Parisi minimizations keyed by model and numerics.

use std::path::{Path, PathBuf};

use serde::Serialize;

use super::output::{render_json, sha256_hex};
use crate::error::{Error, Result};
use crate::instances::write_atomic;
use crate::parisi::{MixedXi, ParisiResult, ParisiSettings};

#[derive(Serialize)]
struct Key<'a> {
    xi: &'a MixedXi,
    pieces: usize,
    grid: usize,
    quad: usize,
}

pub fn cache_key(xi: &MixedXi, pieces: usize, settings: &ParisiSettings) -> String {
    let key = Key { xi, pieces, grid: settings.grid, quad: settings.quad };
    sha256_hex(&serde_json::to_vec(&key).expect("serializable"))
}

pub fn cache_path(out: &Path, xi: &MixedXi, pieces: usize, settings: &ParisiSettings) -> PathBuf {
    out.join("cache").join(format!("parisi-{}.json", cache_key(xi, pieces, settings)))
}

pub fn load(path: &Path) -> Result<Option<ParisiResult>> {
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map(Some).map_err(|e| Error::Parse { path: path.to_path_buf(), message: e.to_string() })
}

pub fn store(path: &Path, result: &ParisiResult) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    write_atomic(path, &render_json(result)?)
}
