use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{APolyResult, ApolyError};
use crate::charvariety::PretzelParams;

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "APOLY_CACHE_DIR";

/// Bumped whenever the stored result format or the computation changes.
const FORMAT: &str = "apoly-v1";

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    result: APolyResult,
}

/// `$APOLY_CACHE_DIR` if set and nonempty, else a directory under the
/// system temporary directory.
pub fn default_cache_dir() -> Option<PathBuf> {
    match std::env::var_os(CACHE_ENV) {
        Some(d) if !d.is_empty() => Some(PathBuf::from(d)),
        _ => Some(std::env::temp_dir().join("pretzel-apoly-cache")),
    }
}

pub(super) fn key(params: PretzelParams, order: Option<&[String]>) -> String {
    let order = order.map_or_else(|| "default".to_string(), |o| o.join(","));
    format!("{FORMAT}|{},{},{}|{order}", params.k1, params.k2, params.k3)
}

/// File holding the result for a key: the key's SHA-256, shortened.
pub fn cache_file(dir: &Path, params: PretzelParams, order: Option<&[String]>) -> PathBuf {
    file_for(dir, &key(params, order))
}

fn file_for(dir: &Path, key: &str) -> PathBuf {
    let digest = Sha256::digest(key.as_bytes());
    let hex: String = digest.iter().take(12).map(|b| format!("{b:02x}")).collect();
    dir.join(format!("apoly-{hex}.json"))
}

/// A stored result, if present, readable and written for this very key.
pub(super) fn load(dir: &Path, key: &str) -> Option<APolyResult> {
    let text = std::fs::read_to_string(file_for(dir, key)).ok()?;
    let entry: Entry = serde_json::from_str(&text).ok()?;
    (entry.key == key).then_some(entry.result)
}

/// Writes to a temporary file in the same directory, then renames it into
/// place, so readers never see a partial file.
pub(super) fn store(dir: &Path, key: &str, result: &APolyResult) -> Result<(), ApolyError> {
    let err = |e: std::io::Error| ApolyError::Cache(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(err)?;
    let entry = Entry { key: key.to_string(), result: result.clone() };
    let json = serde_json::to_string(&entry).map_err(|e| ApolyError::Cache(e.to_string()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(json.as_bytes()).map_err(err)?;
    tmp.persist(file_for(dir, key)).map_err(|e| err(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_separate_orders_and_knots() {
        let a = PretzelParams::new(0, 0, 1).unwrap();
        let b = PretzelParams::new(1, 0, 1).unwrap();
        let o: Vec<String> = ["s3", "s1", "s2", "lambda"].iter().map(|s| s.to_string()).collect();
        let dir = Path::new("/x");
        assert_ne!(cache_file(dir, a, None), cache_file(dir, b, None));
        assert_ne!(cache_file(dir, a, None), cache_file(dir, a, Some(&o)));
        assert_eq!(cache_file(dir, a, Some(&o)), cache_file(dir, a, Some(&o)));
    }
}
