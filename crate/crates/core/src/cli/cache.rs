//! Content-addressed store for computed tables, expansions and reports.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{KhopfError, Result};

/// Part of every key; bump when a payload format or a computation changes.
pub const CACHE_VERSION: &str = concat!("khopf-", env!("CARGO_PKG_VERSION"), "/1");

/// One stored artifact. `payload` is the serialized value, kept verbatim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub descriptor: String,
    pub version: String,
    /// Seconds since the Unix epoch.
    pub created: u64,
    pub payload: String,
}

/// A directory of entries laid out as `<dir>/<hex[..2]>/<hex>.json`.
#[derive(Clone, Debug)]
pub struct Store {
    dir: PathBuf,
    version: String,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl Store {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Store { dir: dir.into(), version: CACHE_VERSION.to_string() }
    }

    /// A store whose keys use a different version tag.
    pub fn with_version(dir: impl Into<PathBuf>, version: impl Into<String>) -> Self {
        Store { dir: dir.into(), version: version.into() }
    }

    /// `$XDG_CACHE_HOME/khopf`, falling back to `$HOME/.cache/khopf`.
    pub fn default_dir() -> Option<PathBuf> {
        let base = std::env::var_os("XDG_CACHE_HOME")
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
        Some(base.join("khopf"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Hex SHA-256 of the descriptor together with the version tag.
    pub fn key(&self, descriptor: &str) -> String {
        let digest = Sha256::digest(format!("{descriptor}|{}", self.version).as_bytes());
        format!("{digest:x}")
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(&key[..2]).join(format!("{key}.json"))
    }

    /// `Ok(None)` on a miss; an error when the entry exists but is unreadable.
    pub fn load(&self, descriptor: &str) -> Result<Option<CacheEntry>> {
        let key = self.key(descriptor);
        let path = self.path_for(&key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |why: String| KhopfError::Cache(format!("corrupt entry {}: {why}", path.display()));
        let entry: CacheEntry = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
        if entry.key != key || entry.descriptor != descriptor || entry.version != self.version {
            return Err(corrupt("key does not match its contents".into()));
        }
        Ok(Some(entry))
    }

    /// Write an entry via a temporary file and an atomic rename.
    pub fn store(&self, descriptor: &str, payload: String) -> Result<CacheEntry> {
        let key = self.key(descriptor);
        let path = self.path_for(&key);
        let parent = path.parent().expect("entry paths have a parent");
        fs::create_dir_all(parent)?;
        let created = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let entry =
            CacheEntry { key: key.clone(), descriptor: descriptor.to_string(), version: self.version.clone(), created, payload };
        let tmp = parent.join(format!(
            ".{key}.{}.{}.tmp",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        if let Err(e) = fs::rename(&tmp, &path) {
            let _ = fs::remove_file(&tmp);
            return Err(e.into());
        }
        Ok(entry)
    }

    /// Return the cached value for `descriptor`, computing and storing it on a miss.
    ///
    /// Unreadable entries are reported through `warnings` and recomputed.
    pub fn get_or_compute<T>(
        &self,
        descriptor: &str,
        warnings: &mut Vec<String>,
        encode: impl Fn(&T) -> Result<String>,
        decode: impl Fn(&str) -> Result<T>,
        compute: impl FnOnce() -> Result<T>,
    ) -> Result<T> {
        match self.load(descriptor) {
            Ok(Some(entry)) => match decode(&entry.payload) {
                Ok(v) => return Ok(v),
                Err(e) => warnings.push(format!("ignoring cache entry {}: {e}", entry.key)),
            },
            Ok(None) => {}
            Err(e) => warnings.push(format!("ignoring {e}")),
        }
        let value = compute()?;
        if let Err(e) = encode(&value).and_then(|p| self.store(descriptor, p)) {
            warnings.push(format!("could not write cache entry: {e}"));
        }
        Ok(value)
    }

    /// All readable entries, sorted by key.
    pub fn list(&self) -> Result<Vec<CacheEntry>> {
        let mut out = Vec::new();
        for file in self.entry_files()? {
            if let Ok(e) = fs::read_to_string(&file).map_err(KhopfError::from).and_then(|t| Ok(serde_json::from_str(&t)?)) {
                out.push(e);
            }
        }
        out.sort_by(|a: &CacheEntry, b| a.key.cmp(&b.key));
        Ok(out)
    }

    /// Remove every entry; returns how many files were deleted.
    pub fn clear(&self) -> Result<usize> {
        let files = self.entry_files()?;
        for f in &files {
            fs::remove_file(f)?;
        }
        Ok(files.len())
    }

    fn entry_files(&self) -> Result<Vec<PathBuf>> {
        let mut out = Vec::new();
        let top = match fs::read_dir(&self.dir) {
            Ok(d) => d,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(e.into()),
        };
        for shard in top {
            let shard = shard?.path();
            if !shard.is_dir() {
                continue;
            }
            for f in fs::read_dir(&shard)? {
                let f = f?.path();
                if f.extension().is_some_and(|x| x == "json") {
                    out.push(f);
                }
            }
        }
        out.sort();
        Ok(out)
    }
}
