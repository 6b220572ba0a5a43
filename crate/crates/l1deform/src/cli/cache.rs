//! Content-addressed on-disk cache.
//!
//! An entry is `MAGIC version\n sha256(payload)\n payload`. Entries with
//! another version are ignored; entries whose checksum fails are deleted.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "L1DEFORM_CACHE_DIR";
const MAGIC: &str = "l1deform-cache";

/// Version stamp of cached results.
pub fn code_version() -> String {
    format!("{}+1", env!("CARGO_PKG_VERSION"))
}

/// The inputs an entry depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheKey {
    pub model: String,
    pub q: usize,
    pub k: i64,
    pub n: i64,
    pub extra: String,
}

impl CacheKey {
    pub fn digest(&self, version: &str) -> String {
        let mut h = Sha256::new();
        for part in [self.model.as_str(), &self.q.to_string(), &self.k.to_string(), &self.n.to_string(), &self.extra, version] {
            h.update((part.len() as u64).to_le_bytes());
            h.update(part.as_bytes());
        }
        hex::encode(h.finalize())
    }
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    version: String,
}

/// `flag`, else the environment variable, else the per-user data dir.
pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(PathBuf::from))
        .or_else(|| dirs::data_local_dir().map(|d| d.join("l1deform")))
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Cache(e.to_string())
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        Self::with_version(dir, code_version())
    }

    pub fn with_version(dir: impl Into<PathBuf>, version: impl Into<String>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(io)?;
        Ok(Cache { dir, version: version.into() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.bin", key.digest(&self.version)))
    }

    fn header(&self) -> String {
        format!("{MAGIC} {}\n", self.version)
    }

    pub fn get(&self, key: &CacheKey) -> Option<Vec<u8>> {
        let path = self.path(key);
        let bytes = fs::read(&path).ok()?;
        let header = self.header();
        let Some(rest) = bytes.strip_prefix(header.as_bytes()) else {
            if !bytes.starts_with(MAGIC.as_bytes()) {
                let _ = fs::remove_file(&path);
            }
            return None;
        };
        let valid = rest.len() > 65 && rest[64] == b'\n' && {
            let payload = &rest[65..];
            hex::encode(Sha256::digest(payload)).as_bytes() == &rest[..64]
        };
        if valid {
            Some(rest[65..].to_vec())
        } else {
            let _ = fs::remove_file(&path);
            None
        }
    }

    /// Atomic: the payload goes to a temporary file in the cache
    /// directory which is then renamed over the entry.
    pub fn put(&self, key: &CacheKey, payload: &[u8]) -> Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        tmp.write_all(self.header().as_bytes()).map_err(io)?;
        tmp.write_all(hex::encode(Sha256::digest(payload)).as_bytes()).map_err(io)?;
        tmp.write_all(b"\n").map_err(io)?;
        tmp.write_all(payload).map_err(io)?;
        tmp.as_file().sync_all().map_err(io)?;
        tmp.persist(self.path(key)).map_err(io)?;
        Ok(())
    }

    /// Cached value, or `compute` stored on a miss.
    pub fn get_or_insert<T, F>(&self, key: &CacheKey, compute: F) -> Result<T>
    where
        T: serde::Serialize + serde::de::DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        if let Some(v) = self.get(key).and_then(|b| serde_json::from_slice(&b).ok()) {
            return Ok(v);
        }
        let v = compute()?;
        self.put(key, &serde_json::to_vec(&v).map_err(io)?)?;
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(n: i64) -> CacheKey {
        CacheKey { model: "m".into(), q: 2, k: 3, n, extra: String::new() }
    }

    #[test]
    fn round_trip() {
        let d = tempfile::tempdir().unwrap();
        let c = Cache::open(d.path()).unwrap();
        assert_eq!(c.get(&key(10)), None);
        let payload: Vec<u8> = (0..=255).collect();
        c.put(&key(10), &payload).unwrap();
        assert_eq!(c.get(&key(10)).unwrap(), payload);
        assert_eq!(c.get(&key(11)), None);
        c.put(&key(10), b"").unwrap();
        assert_eq!(c.get(&key(10)), None, "empty payload is rejected as too short");
    }

    #[test]
    fn version_bump_skips_old_entries() {
        let d = tempfile::tempdir().unwrap();
        Cache::with_version(d.path(), "1").unwrap().put(&key(10), b"old").unwrap();
        let c2 = Cache::with_version(d.path(), "2").unwrap();
        assert_eq!(c2.get(&key(10)), None);
        assert_eq!(Cache::with_version(d.path(), "1").unwrap().get(&key(10)).unwrap(), b"old");
    }

    #[test]
    fn stale_header_on_same_path_is_ignored() {
        let d = tempfile::tempdir().unwrap();
        let c = Cache::with_version(d.path(), "7").unwrap();
        c.put(&key(4), b"payload").unwrap();
        let path = c.path(&key(4));
        let bytes = fs::read(&path).unwrap();
        let tampered = [b"l1deform-cache 6\n".as_slice(), &bytes[c.header().len()..]].concat();
        fs::write(&path, tampered).unwrap();
        assert_eq!(c.get(&key(4)), None);
        assert!(path.exists(), "other versions are left alone");
    }

    #[test]
    fn corrupt_entries_are_discarded() {
        let d = tempfile::tempdir().unwrap();
        let c = Cache::open(d.path()).unwrap();
        c.put(&key(5), b"hello world").unwrap();
        let path = c.path(&key(5));
        let mut bytes = fs::read(&path).unwrap();
        let last = bytes.len() - 1;
        bytes[last] ^= 1;
        fs::write(&path, &bytes).unwrap();
        assert_eq!(c.get(&key(5)), None);
        assert!(!path.exists());
        fs::write(&path, b"garbage").unwrap();
        assert_eq!(c.get(&key(5)), None);
        let v: Vec<i64> = c.get_or_insert(&key(5), || Ok(vec![1, 2])).unwrap();
        assert_eq!(v, [1, 2]);
        let v: Vec<i64> = c.get_or_insert(&key(5), || Err(Error::Cache("recomputed".into()))).unwrap();
        assert_eq!(v, [1, 2]);
    }

    #[test]
    fn concurrent_writers_leave_one_valid_winner() {
        let d = tempfile::tempdir().unwrap();
        let c = Cache::open(d.path()).unwrap();
        let payloads: Vec<Vec<u8>> = (0..16u8).map(|i| vec![i; 4096 + i as usize]).collect();
        let all = &payloads;
        std::thread::scope(|s| {
            for p in all {
                let c = c.clone();
                s.spawn(move || {
                    for _ in 0..20 {
                        c.put(&key(1), p).unwrap();
                        if let Some(got) = c.get(&key(1)) {
                            assert!(all.contains(&got));
                        }
                    }
                });
            }
        });
        let got = c.get(&key(1)).unwrap();
        assert!(payloads.contains(&got));
        let leftovers = fs::read_dir(d.path()).unwrap().count();
        assert_eq!(leftovers, 1);
    }

    #[test]
    fn keys_separate_fields() {
        let a = CacheKey { model: "ab".into(), q: 1, k: 2, n: 3, extra: String::new() };
        let b = CacheKey { model: "a".into(), extra: "b".into(), ..a.clone() };
        assert_ne!(a.digest("v"), b.digest("v"));
        assert_ne!(a.digest("v"), a.digest("w"));
    }

    #[test]
    fn dir_resolution_prefers_flag() {
        assert_eq!(resolve_dir(Some(Path::new("/x"))).unwrap(), PathBuf::from("/x"));
    }
}
