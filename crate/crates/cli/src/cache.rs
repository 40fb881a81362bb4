//! Persistent value cache keyed by a hash of the canonical web and `n`.
//!
//! The file holds the entries and a SHA-256 checksum of their encoding. A
//! file that fails to parse or whose checksum does not match is ignored.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use parking_lot::Mutex;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use webskein::web::{canonicalize, SliceWeb};
use webskein::{Engine, LPoly, Result};

#[derive(Serialize, Deserialize, Default)]
struct CacheFile {
    checksum: String,
    entries: BTreeMap<String, LPoly>,
}

fn checksum(entries: &BTreeMap<String, LPoly>) -> String {
    let body = serde_json::to_vec(entries).expect("entries serialize");
    format!("{:x}", Sha256::digest(&body))
}

fn key(kind: &str, w: &SliceWeb, n: u32) -> String {
    let body = serde_json::to_vec(&canonicalize(w)).expect("web serializes");
    let mut h = Sha256::new();
    h.update(kind.as_bytes());
    h.update(n.to_le_bytes());
    h.update(&body);
    format!("{:x}", h.finalize())
}

/// Wraps an engine, answering repeated questions from the cache file.
pub struct CachedEngine {
    inner: Box<dyn Engine>,
    path: PathBuf,
    entries: Mutex<BTreeMap<String, LPoly>>,
    dirty: Mutex<bool>,
}

impl CachedEngine {
    pub fn open(inner: Box<dyn Engine>, path: &Path) -> Self {
        let entries = fs::read(path)
            .ok()
            .and_then(|bytes| serde_json::from_slice::<CacheFile>(&bytes).ok())
            .filter(|f| f.checksum == checksum(&f.entries))
            .map(|f| f.entries)
            .unwrap_or_default();
        CachedEngine {
            inner,
            path: path.to_path_buf(),
            entries: Mutex::new(entries),
            dirty: Mutex::new(false),
        }
    }

    pub fn save(&self) -> std::io::Result<()> {
        if !*self.dirty.lock() {
            return Ok(());
        }
        let entries = self.entries.lock().clone();
        let file = CacheFile {
            checksum: checksum(&entries),
            entries,
        };
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(
            &self.path,
            serde_json::to_vec(&file).expect("cache serializes"),
        )
    }

    fn cached(
        &self,
        kind: &str,
        w: &SliceWeb,
        n: u32,
        f: impl FnOnce() -> Result<LPoly>,
    ) -> Result<LPoly> {
        let k = key(kind, w, n);
        if let Some(v) = self.entries.lock().get(&k) {
            return Ok(v.clone());
        }
        let v = f()?;
        self.entries.lock().insert(k, v.clone());
        *self.dirty.lock() = true;
        Ok(v)
    }
}

impl Engine for CachedEngine {
    fn name(&self) -> &'static str {
        self.inner.name()
    }
    fn eval(&self, w: &SliceWeb, n: u32) -> Result<LPoly> {
        self.cached("web", w, n, || self.inner.eval(w, n))
    }
    fn eval_diagram(&self, w: &SliceWeb, n: u32) -> Result<LPoly> {
        self.cached("diagram", w, n, || self.inner.eval_diagram(w, n))
    }
}
