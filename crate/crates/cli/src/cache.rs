//! Content-addressed report cache: `<dir>/<digest[..2]>/<digest>.json`.
//!
//! Entries are written to a temporary file in the target directory and renamed into
//! place, so readers see either nothing or a complete file. Each entry stores a digest
//! of its payload; anything that fails to parse or verify is reported as corrupt.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::task::TaskDescriptor;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedReport {
    pub task_digest: String,
    pub artifact_version: String,
    /// Canonical report text, exactly as printed.
    pub payload: String,
    pub payload_digest: String,
    pub created_unix: u64,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
    version: String,
}

fn sha_hex(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>, version: impl Into<String>) -> Cache {
        Cache {
            dir: dir.into(),
            version: version.into(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn path_for(&self, task: &TaskDescriptor) -> PathBuf {
        let d = task.digest(&self.version);
        self.dir.join(&d[..2]).join(format!("{d}.json"))
    }

    /// `Ok(None)` on a miss, `CacheCorrupt` if the entry exists but does not verify.
    pub fn lookup(&self, task: &TaskDescriptor) -> CliResult<Option<CachedReport>> {
        let path = self.path_for(task);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => {
                return Err(CliError::CacheCorrupt {
                    path,
                    reason: e.to_string(),
                })
            }
        };
        let corrupt = |reason: String| CliError::CacheCorrupt {
            path: path.clone(),
            reason,
        };
        let entry: CachedReport = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
        if entry.artifact_version != self.version {
            return Err(corrupt(format!("written by version {}", entry.artifact_version)));
        }
        if entry.task_digest != task.digest(&self.version) {
            return Err(corrupt("task digest does not match its path".into()));
        }
        if sha_hex(&entry.payload) != entry.payload_digest {
            return Err(corrupt("payload digest mismatch".into()));
        }
        Ok(Some(entry))
    }

    pub fn store(&self, task: &TaskDescriptor, payload: &str) -> CliResult<CachedReport> {
        let path = self.path_for(task);
        let parent = path.parent().expect("entry paths have a parent");
        let io = |e: std::io::Error| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        };
        std::fs::create_dir_all(parent).map_err(io)?;
        let entry = CachedReport {
            task_digest: task.digest(&self.version),
            artifact_version: self.version.clone(),
            payload: payload.to_string(),
            payload_digest: sha_hex(payload),
            created_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        let text = serde_json::to_string(&entry).map_err(|e| CliError::Internal(e.to_string()))?;
        let mut tmp = tempfile::NamedTempFile::new_in(parent).map_err(io)?;
        tmp.write_all(text.as_bytes()).map_err(io)?;
        tmp.as_file().sync_all().map_err(io)?;
        tmp.persist(&path).map_err(|e| io(e.error))?;
        Ok(entry)
    }

    /// Removes an entry; a missing file is not an error.
    pub fn discard(&self, task: &TaskDescriptor) -> CliResult<()> {
        let path = self.path_for(task);
        match std::fs::remove_file(&path) {
            Err(e) if e.kind() != std::io::ErrorKind::NotFound => Err(CliError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            }),
            _ => Ok(()),
        }
    }
}
