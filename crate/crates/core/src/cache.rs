//! On-disk JSON cache, one file per `(kind, n)`.
//!
//! Entries carry a schema version and the crate version; anything that does not
//! match the running build is treated as a miss.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable consulted when no directory is given explicitly.
pub const CACHE_DIR_ENV: &str = "OZCL_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    schema_version: u32,
    artifact_version: String,
    kind: String,
    n: u32,
    value: T,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, kind: &str, n: u32) -> PathBuf {
        self.dir.join(format!("{kind}-{n}.json"))
    }

    /// The cached value, or `None` if absent, unreadable or from another version.
    pub fn load<T: DeserializeOwned>(&self, kind: &str, n: u32) -> Option<T> {
        let text = fs::read_to_string(self.path(kind, n)).ok()?;
        let entry: Entry<T> = serde_json::from_str(&text).ok()?;
        let current = entry.schema_version == SCHEMA_VERSION
            && entry.artifact_version == ARTIFACT_VERSION
            && entry.kind == kind
            && entry.n == n;
        if !current {
            log::debug!("stale cache entry {kind}-{n}");
        }
        current.then_some(entry.value)
    }

    pub fn store<T: Serialize>(&self, kind: &str, n: u32, value: &T) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = Entry {
            schema_version: SCHEMA_VERSION,
            artifact_version: ARTIFACT_VERSION.to_string(),
            kind: kind.to_string(),
            n,
            value,
        };
        let tmp = self.path(kind, n).with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec_pretty(&entry)?)?;
        fs::rename(tmp, self.path(kind, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_staleness() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        assert_eq!(cache.load::<u32>("zcl", 21), None);
        cache.store("zcl", 21, &21u32).unwrap();
        assert_eq!(cache.load::<u32>("zcl", 21), Some(21));
        assert_eq!(cache.load::<u32>("zcl", 22), None);

        let path = dir.path().join("zcl-21.json");
        let text = fs::read_to_string(&path)
            .unwrap()
            .replace("\"schema_version\": 1", "\"schema_version\": 0");
        fs::write(&path, text).unwrap();
        assert_eq!(cache.load::<u32>("zcl", 21), None);
        fs::write(&path, "not json").unwrap();
        assert_eq!(cache.load::<u32>("zcl", 21), None);
    }
}
