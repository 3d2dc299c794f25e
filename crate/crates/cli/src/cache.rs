use std::fs;
use std::io::Write;
use std::path::PathBuf;
#[cfg(test)]
use std::path::Path;

use sha2::{Digest, Sha256};

/// On-disk result cache. Keys hash the library version, the subcommand and its
/// canonical arguments, so a new release never reads stale entries.
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    /// `$XDG_CACHE_HOME/gelfand`, `~/.cache/gelfand`, or the temp dir.
    pub fn default_dir() -> PathBuf {
        if let Some(x) = std::env::var_os("XDG_CACHE_HOME") {
            return PathBuf::from(x).join("gelfand");
        }
        if let Some(h) = std::env::var_os("HOME") {
            return PathBuf::from(h).join(".cache").join("gelfand");
        }
        std::env::temp_dir().join("gelfand-cache")
    }

    pub fn key(subcommand: &str, args: &str) -> String {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        h.update([0]);
        h.update(subcommand.as_bytes());
        h.update([0]);
        h.update(args.as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<String> {
        fs::read_to_string(self.path(key)).ok()
    }

    /// Write-temp-then-rename so readers never see a partial entry.
    pub fn put(&self, key: &str, body: &str) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(body.as_bytes())?;
        tmp.flush()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }

    #[cfg(test)]
    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_key_separation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("nested"));
        let k = Cache::key("verify", "[2,1,1,3]");
        assert_ne!(k, Cache::key("verify", "[2,1,1,4]"));
        assert_ne!(k, Cache::key("character", "[2,1,1,3]"));
        assert!(cache.get(&k).is_none());
        cache.put(&k, "{\"a\":1}").unwrap();
        assert_eq!(cache.get(&k).as_deref(), Some("{\"a\":1}"));
        cache.put(&k, "{\"a\":2}").unwrap();
        assert_eq!(cache.get(&k).as_deref(), Some("{\"a\":2}"));
        let leftovers = fs::read_dir(cache.dir()).unwrap().count();
        assert_eq!(leftovers, 1);
    }
}
