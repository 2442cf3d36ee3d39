//! Memo table for essential-cohomology dimensions keyed by canonical code.
//!
//! The on-disk form is a tab-separated text file with a versioned header:
//!
//! ```text
//! # graphcoh-cache v1
//! <kind>\t<canonical code>\t<d0,d1,...>
//! ```
//!
//! Lines are appended one `write` at a time; unreadable lines are skipped on
//! load and a header mismatch discards the whole file. The cache never
//! changes results, only how often they are recomputed.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::canon::CanonicalCode;
use crate::error::Result;

pub const CACHE_HEADER: &str = "# graphcoh-cache v1";
pub const CACHE_FILE: &str = "essential-v1.tsv";
/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "GRAPHCOH_CACHE_DIR";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
}

#[derive(Debug, Default)]
pub struct EssentialCache {
    map: Mutex<HashMap<(String, CanonicalCode), Vec<u64>>>,
    file: Option<Mutex<File>>,
    path: Option<PathBuf>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl EssentialCache {
    /// In-memory only.
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Opens (or creates) `dir/essential-v1.tsv`.
    pub fn open(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(CACHE_FILE);
        let mut map = HashMap::new();
        let mut valid = false;
        if let Ok(f) = File::open(&path) {
            let mut lines = BufReader::new(f).lines();
            if let Some(Ok(head)) = lines.next() {
                valid = head.trim_end() == CACHE_HEADER;
            }
            if valid {
                for line in lines.map_while(|l| l.ok()) {
                    if let Some((key, dims)) = parse_line(&line) {
                        map.insert(key, dims);
                    }
                }
            }
        }
        let file = if valid {
            OpenOptions::new().append(true).open(&path)?
        } else {
            let mut f = File::create(&path)?;
            writeln!(f, "{CACHE_HEADER}")?;
            f
        };
        Ok(EssentialCache {
            map: Mutex::new(map),
            file: Some(Mutex::new(file)),
            path: Some(path),
            ..Default::default()
        })
    }

    /// Opens the directory named by `GRAPHCOH_CACHE_DIR`, if set.
    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Ok(Some(Self::open(Path::new(&dir))?)),
            _ => Ok(None),
        }
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn get(&self, kind: &str, code: &CanonicalCode) -> Option<Vec<u64>> {
        let found = self
            .map
            .lock()
            .expect("cache lock")
            .get(&(kind.to_string(), code.clone()))
            .cloned();
        match found {
            Some(_) => self.hits.fetch_add(1, Ordering::Relaxed),
            None => self.misses.fetch_add(1, Ordering::Relaxed),
        };
        found
    }

    /// Idempotent: re-inserting an existing key is a no-op.
    pub fn insert(&self, kind: &str, code: &CanonicalCode, dims: &[u64]) {
        let key = (kind.to_string(), code.clone());
        {
            let mut map = self.map.lock().expect("cache lock");
            if map.contains_key(&key) {
                return;
            }
            map.insert(key, dims.to_vec());
        }
        if let Some(file) = &self.file {
            let line = format!(
                "{kind}\t{code}\t{}\n",
                dims.iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            );
            // A failed append only costs a recomputation next run.
            let _ = file
                .lock()
                .expect("cache file lock")
                .write_all(line.as_bytes());
        }
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.map.lock().expect("cache lock").len(),
        }
    }
}

fn parse_line(line: &str) -> Option<((String, CanonicalCode), Vec<u64>)> {
    let mut parts = line.split('\t');
    let kind = parts.next()?;
    let code = CanonicalCode::parse(parts.next()?).ok()?;
    let dims_text = parts.next()?;
    if parts.next().is_some() || kind.is_empty() {
        return None;
    }
    let dims = if dims_text.is_empty() {
        Vec::new()
    } else {
        dims_text
            .split(',')
            .map(|t| t.parse().ok())
            .collect::<Option<Vec<u64>>>()?
    };
    Some(((kind.to_string(), code), dims))
}
