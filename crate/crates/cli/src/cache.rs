//! Results keyed by a hash of the command, its inputs and the tool version,
//! stored as pretty-printed JSON.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl AsRef<Path>) -> Result<Self, CliError> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("cache dir {}: {e}", dir.display())))?;
        Ok(Cache { dir })
    }

    /// Hex SHA-256 of `command`, the canonical inputs and the crate version.
    pub fn key(command: &str, inputs: &serde_json::Value) -> String {
        let material = serde_json::json!({
            "command": command,
            "inputs": inputs,
            "version": env!("CARGO_PKG_VERSION"),
        });
        hex::encode(Sha256::digest(material.to_string().as_bytes()))
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A missing or unreadable entry is a miss.
    pub fn load<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store<T: Serialize>(&self, key: &str, value: &T) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
        let path = self.path(key);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", tmp.display())))?;
        fs::rename(&tmp, &path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }

    /// Cached value for `key`, or `compute` stored under it.
    pub fn get_or_compute<T, F>(&self, key: &str, compute: F) -> Result<(T, bool), CliError>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T, CliError>,
    {
        if let Some(v) = self.load(key) {
            return Ok((v, true));
        }
        let v = compute()?;
        self.store(key, &v)?;
        Ok((v, false))
    }
}
