//! On-disk cache of JST results keyed by a hash of the run parameters.
//!
//! Entries are written to a temporary file in the cache directory and then
//! renamed into place, so concurrent writers never expose a partial file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use hauptmodul::elimination::PivotRule;
use hauptmodul::jst::{JstResult, Variant};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
struct Key {
    version: &'static str,
    level: u64,
    variant: Variant,
    trunc: Option<i64>,
    m_max: u32,
    pivot_rule: PivotRule,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).with_context(|| format!("creating cache dir {}", dir.display()))?;
        Ok(Cache { dir })
    }

    pub fn path(&self, level: u64, variant: Variant, trunc: Option<i64>, m_max: u32, pivot_rule: PivotRule) -> PathBuf {
        let key = Key { version: env!("CARGO_PKG_VERSION"), level, variant, trunc, m_max, pivot_rule };
        let digest = Sha256::digest(serde_json::to_vec(&key).expect("key serializes"));
        self.dir.join(format!("{variant}-{level}-{}.json", &hex::encode(digest)[..16]))
    }

    /// A readable entry, or `None` when missing or unparsable.
    pub fn load(&self, path: &Path) -> Option<JstResult> {
        let text = fs::read_to_string(path).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store(&self, path: &Path, result: &JstResult) -> Result<()> {
        let text = serde_json::to_string_pretty(result)?;
        let tmp = self.dir.join(format!(".{}.{}.tmp", path.file_name().unwrap().to_string_lossy(), std::process::id()));
        {
            let mut f = fs::File::create(&tmp).with_context(|| format!("writing {}", tmp.display()))?;
            f.write_all(text.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
        Ok(())
    }
}
