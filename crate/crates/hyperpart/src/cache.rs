//! Persistent result cache: one append-only JSON-lines file per counting
//! family. Records are immutable; a recomputation that disagrees with a
//! stored record aborts loudly rather than papering over it.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "HYPERPART_CACHE_DIR";

/// One cached count.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CacheRecord {
    pub kind: String,
    pub d: u32,
    /// An integer or an integer vector, depending on the family.
    pub index: Value,
    /// Decimal string; counts outgrow native integers.
    pub value: String,
    pub engine_version: String,
    pub created_at: u64,
}

/// A cache rooted at one directory, with `<kind>.jsonl` files inside.
pub struct CountCache {
    dir: PathBuf,
}

impl CountCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(CountCache { dir })
    }

    /// Resolves the cache directory: explicit flag, then the environment
    /// variable, then the platform cache directory.
    pub fn resolve_dir(explicit: Option<&Path>) -> PathBuf {
        if let Some(dir) = explicit {
            return dir.to_path_buf();
        }
        if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
            return PathBuf::from(dir);
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
            .unwrap_or_else(std::env::temp_dir);
        base.join("hyperpart")
    }

    fn file(&self, kind: &str) -> PathBuf {
        self.dir.join(format!("{kind}.jsonl"))
    }

    pub fn lookup(&self, kind: &str, d: u32, index: &Value) -> Result<Option<CacheRecord>> {
        let path = self.file(kind);
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(path)?;
        for line in text.lines() {
            if line.trim().is_empty() {
                continue;
            }
            let record: CacheRecord = serde_json::from_str(line)?;
            if record.kind == kind && record.d == d && &record.index == index {
                return Ok(Some(record));
            }
        }
        Ok(None)
    }

    /// Stores a freshly computed value. An existing record must agree
    /// exactly, otherwise this is a cache conflict.
    pub fn store(&self, kind: &str, d: u32, index: &Value, value: &str) -> Result<()> {
        if let Some(existing) = self.lookup(kind, d, index)? {
            if existing.value == value {
                return Ok(());
            }
            return Err(Error::CacheConflict {
                key: format!("{kind} d={d} index={index}"),
                cached: existing.value,
                computed: value.to_string(),
            });
        }
        let record = CacheRecord {
            kind: kind.to_string(),
            d,
            index: index.clone(),
            value: value.to_string(),
            engine_version: crate::ENGINE_VERSION.to_string(),
            created_at: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(self.file(kind))?;
        let mut line = serde_json::to_string(&record)?;
        line.push('\n');
        file.write_all(line.as_bytes())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn store_and_lookup_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CountCache::open(dir.path()).unwrap();
        assert!(cache.lookup("p", 3, &json!(6)).unwrap().is_none());

        cache.store("p", 3, &json!(6), "140").unwrap();
        let hit = cache.lookup("p", 3, &json!(6)).unwrap().unwrap();
        assert_eq!(hit.value, "140");
        assert_eq!(hit.engine_version, crate::ENGINE_VERSION);

        // storing the same value again is a no-op
        cache.store("p", 3, &json!(6), "140").unwrap();
        // a different value for the same key is a conflict
        let err = cache.store("p", 3, &json!(6), "141").unwrap_err();
        assert!(matches!(err, Error::CacheConflict { .. }));
    }

    #[test]
    fn families_are_separate_files() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CountCache::open(dir.path()).unwrap();
        cache.store("a", 1, &json!(4), "14").unwrap();
        cache.store("b", 1, &json!(4), "12").unwrap();
        assert!(dir.path().join("a.jsonl").exists());
        assert!(dir.path().join("b.jsonl").exists());
        assert_eq!(cache.lookup("a", 1, &json!(4)).unwrap().unwrap().value, "14");
        assert_eq!(cache.lookup("b", 1, &json!(4)).unwrap().unwrap().value, "12");
    }

    #[test]
    fn vector_indices_are_keys() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CountCache::open(dir.path()).unwrap();
        cache.store("cvec", 2, &json!([2, 2]), "2").unwrap();
        assert!(cache.lookup("cvec", 2, &json!([2, 1])).unwrap().is_none());
        assert_eq!(
            cache.lookup("cvec", 2, &json!([2, 2])).unwrap().unwrap().value,
            "2"
        );
    }
}
