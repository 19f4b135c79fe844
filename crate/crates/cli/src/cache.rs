//! Content-addressed verdict cache under `SYMPAL_CACHE_DIR`.

use std::io::Write;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

pub const ENV: &str = "SYMPAL_CACHE_DIR";

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn from_env() -> Option<Cache> {
        let dir = PathBuf::from(std::env::var_os(ENV)?);
        std::fs::create_dir_all(&dir).ok()?;
        Some(Cache { dir })
    }

    pub fn key(parts: &[&str]) -> String {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        for p in parts {
            h.update((p.len() as u64).to_le_bytes());
            h.update(p.as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<String> {
        std::fs::read_to_string(self.path(key)).ok()
    }

    /// Writes through a temporary file and renames, so readers never see a
    /// partial entry.  Failures are ignored: the cache is advisory.
    pub fn put(&self, key: &str, value: &str) {
        let Ok(mut tmp) = tempfile::NamedTempFile::new_in(&self.dir) else {
            return;
        };
        if tmp.write_all(value.as_bytes()).is_ok() {
            let _ = tmp.persist(self.path(key));
        }
    }
}
