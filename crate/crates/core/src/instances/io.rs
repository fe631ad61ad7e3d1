use std::fs;
use std::path::{Path, PathBuf};

use super::XorInstance;
use crate::error::{Error, Result};

/// Parse the canonical JSON form. `origin` labels errors (usually a path).
pub fn from_json_str(text: &str, origin: &Path) -> Result<XorInstance> {
    serde_json::from_str(text).map_err(|e| Error::Parse { path: origin.to_path_buf(), message: e.to_string() })
}

pub fn to_json_string(inst: &XorInstance) -> String {
    let mut s = serde_json::to_string_pretty(inst).expect("instance serialization is infallible");
    s.push('\n');
    s
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<XorInstance> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    from_json_str(&text, path)
}

/// Writes atomically: a sibling temporary file is renamed over `path`.
pub fn write_instance(path: impl AsRef<Path>, inst: &XorInstance) -> Result<()> {
    write_atomic(path.as_ref(), to_json_string(inst).as_bytes())
}

pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = PathBuf::from(path);
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    tmp.set_file_name(format!(".{name}.tmp"));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}
