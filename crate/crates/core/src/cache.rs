//! On-disk cache of structure-constant dumps keyed by a content hash of the
//! input. Each entry carries the SHA-256 of its payload; an entry whose
//! payload no longer matches is treated as a miss and rebuilt.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::dump::Dump;
use crate::error::Result;

pub const CACHE_ENV: &str = "QLSMODCAT_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    /// An entry existed but failed its checksum.
    Stale,
    Disabled,
}

impl CacheStatus {
    pub fn label(self) -> &'static str {
        match self {
            CacheStatus::Hit => "hit",
            CacheStatus::Miss => "miss",
            CacheStatus::Stale => "stale",
            CacheStatus::Disabled => "disabled",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

pub fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Key of a build: the operation name, the working conductor and the
/// canonical input bytes.
pub fn cache_key(op: &str, conductor: u32, canonical: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(op.as_bytes());
    h.update([0]);
    h.update(conductor.to_le_bytes());
    h.update(canonical);
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    /// `$QLSMODCAT_CACHE_DIR`, falling back to a directory under the system
    /// temporary directory.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Cache::at(d),
            _ => Cache::at(std::env::temp_dir().join("qlsmodcat-cache")),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn paths(&self, key: &str) -> Option<(PathBuf, PathBuf)> {
        self.dir
            .as_ref()
            .map(|d| (d.join(format!("{key}.json")), d.join(format!("{key}.sha256"))))
    }

    fn read(&self, key: &str) -> (Option<Dump>, CacheStatus) {
        let Some((body, sum)) = self.paths(key) else {
            return (None, CacheStatus::Disabled);
        };
        let (Ok(bytes), Ok(expected)) = (fs::read(&body), fs::read_to_string(&sum)) else {
            return (None, CacheStatus::Miss);
        };
        if hex_digest(&bytes) != expected.trim() {
            return (None, CacheStatus::Stale);
        }
        match std::str::from_utf8(&bytes).ok().and_then(|t| Dump::from_json(t).ok()) {
            Some(d) => (Some(d), CacheStatus::Hit),
            None => (None, CacheStatus::Stale),
        }
    }

    fn write(&self, key: &str, dump: &Dump) -> Result<()> {
        let Some((body, sum)) = self.paths(key) else {
            return Ok(());
        };
        if let Some(parent) = body.parent() {
            fs::create_dir_all(parent)?;
        }
        let text = dump.to_json();
        fs::write(&body, &text)?;
        fs::write(&sum, hex_digest(text.as_bytes()))?;
        Ok(())
    }

    /// Returns the cached dump for `key` or builds and stores it.
    pub fn get_or_build(&self, key: &str, build: impl FnOnce() -> Result<Dump>) -> Result<(Dump, CacheStatus)> {
        let (hit, status) = self.read(key);
        if let Some(d) = hit {
            return Ok((d, status));
        }
        let d = build()?;
        self.write(key, &d)?;
        Ok((d, status))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dump::dump_hopf;
    use crate::hopf::{build_bosonization, QlsDatum};

    #[test]
    fn hit_after_miss_and_stale_after_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let d = QlsDatum::from_exps(&[2], &[&[1]], &[&[1]]).unwrap();
        let build = || Ok(Dump::Hopf(dump_hopf(&build_bosonization(&d)?)));
        let key = cache_key("build-hopf", 2, b"sweedler");
        let (first, s1) = cache.get_or_build(&key, build).unwrap();
        assert_eq!(s1, CacheStatus::Miss);
        let (second, s2) = cache.get_or_build(&key, || unreachable!()).unwrap();
        assert_eq!((s2, &second), (CacheStatus::Hit, &first));
        let body = dir.path().join(format!("{key}.json"));
        let tampered = fs::read_to_string(&body).unwrap().replacen("\"1\"", "\"2\"", 1);
        fs::write(&body, tampered).unwrap();
        let (third, s3) = cache.get_or_build(&key, build).unwrap();
        assert_eq!((s3, &third), (CacheStatus::Stale, &first));
    }

    #[test]
    fn keys_separate_operations_and_conductors() {
        assert_ne!(cache_key("a", 2, b"x"), cache_key("b", 2, b"x"));
        assert_ne!(cache_key("a", 2, b"x"), cache_key("a", 4, b"x"));
        assert_eq!(cache_key("a", 2, b"x").len(), 64);
    }
}
