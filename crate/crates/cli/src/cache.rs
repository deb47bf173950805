//! Content-addressed result cache.
//!
//! Active only when the cache directory environment variable is set.  The key
//! hashes the command name, every input payload, and every parameter; the
//! entry stores the rendered output next to the tool version.  A version
//! mismatch falls through to recomputation.  Writes go through a temporary
//! file and an atomic rename so concurrent runs never observe torn entries.

use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "NAZETA_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    version: String,
    output: String,
}

pub struct ResultCache {
    dir: Option<PathBuf>,
}

impl ResultCache {
    pub fn from_env() -> Self {
        ResultCache {
            dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
        }
    }

    /// Hashes the parts into a hex key; parts are length-prefixed so that
    /// concatenation ambiguities cannot collide.
    pub fn key(parts: &[&str]) -> String {
        let mut hasher = Sha256::new();
        for part in parts {
            hasher.update((part.len() as u64).to_le_bytes());
            hasher.update(part.as_bytes());
        }
        hasher
            .finalize()
            .iter()
            .map(|byte| format!("{byte:02x}"))
            .collect()
    }

    pub fn lookup(&self, key: &str) -> Option<String> {
        let dir = self.dir.as_ref()?;
        let text = fs::read_to_string(dir.join(format!("{key}.json"))).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        if entry.version == env!("CARGO_PKG_VERSION") {
            Some(entry.output)
        } else {
            None
        }
    }

    /// Best effort: cache writes never fail the command.
    pub fn store(&self, key: &str, output: &str) {
        let Some(dir) = self.dir.as_ref() else {
            return;
        };
        if fs::create_dir_all(dir).is_err() {
            return;
        }
        let entry = CacheEntry {
            version: env!("CARGO_PKG_VERSION").to_string(),
            output: output.to_string(),
        };
        let Ok(text) = serde_json::to_string(&entry) else {
            return;
        };
        let tmp = dir.join(format!("{key}.{}.tmp", std::process::id()));
        if fs::write(&tmp, text).is_ok() {
            let _ = fs::rename(&tmp, dir.join(format!("{key}.json")));
        }
    }
}
