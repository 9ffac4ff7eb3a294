//! Fixture-digest cache: one file per index, reused only when the digest of
//! the freshly generated family polynomials matches, written atomically so
//! parallel workers never expose partial files.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use cyclocert_core::FamilyRecord;
use sha2::{Digest, Sha256};

use crate::record::RunRecord;

/// Hex digest over the family fixtures (all six polynomials).
pub fn fixture_digest(record: &FamilyRecord) -> String {
    let mut hasher = Sha256::new();
    for line in record.fingerprint_lines() {
        hasher.update(line.as_bytes());
        hasher.update(b"\n");
    }
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn cache_path(dir: &Path, j: usize, digest: &str) -> PathBuf {
    dir.join(format!("j{j:05}-{}.json", &digest[..16]))
}

/// Loads a cached record if one exists for this index and digest.
pub fn load(dir: &Path, j: usize, digest: &str) -> Option<RunRecord> {
    let path = cache_path(dir, j, digest);
    let text = fs::read_to_string(path).ok()?;
    let record: RunRecord = serde_json::from_str(&text).ok()?;
    (record.j == j && record.digest == digest).then_some(record)
}

/// Write-then-rename so readers never observe a partial record.
pub fn store(dir: &Path, record: &RunRecord) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating cache dir {}", dir.display()))?;
    let path = cache_path(dir, record.j, &record.digest);
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let body = serde_json::to_string_pretty(record).context("serializing cache record")?;
    fs::write(&tmp, body).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, &path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}
