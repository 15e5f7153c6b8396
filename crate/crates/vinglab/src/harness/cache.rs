//! Exact-count cache keyed by content: the sorted point list, class, filter
//! and engine version feed a SHA-256 key, so permuting the input points hits
//! the same entry and an engine bump misses. Corrupt entries fall back to
//! recomputation with a warning.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::census::CensusFilter;
use crate::geom::PointSet;

use super::io::{FilterRepr, ENGINE_VERSION, SCHEMA_VERSION};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema_version: u32,
    pub engine: String,
    pub class: String,
    pub filter: FilterRepr,
    pub n: usize,
    pub count: String,
}

pub fn cache_key(ps: &PointSet, class: &str, filter: &CensusFilter) -> String {
    let mut coords: Vec<(i64, i64)> = ps.points().iter().map(|p| (p.x, p.y)).collect();
    coords.sort_unstable();
    let mut hasher = Sha256::new();
    hasher.update(ENGINE_VERSION.as_bytes());
    hasher.update([0u8]);
    hasher.update(class.as_bytes());
    hasher.update([0u8]);
    hasher.update(filter.min_degree.to_le_bytes());
    hasher.update(
        filter
            .max_edges
            .map(|m| m as i64)
            .unwrap_or(-1)
            .to_le_bytes(),
    );
    for (x, y) in coords {
        hasher.update(x.to_le_bytes());
        hasher.update(y.to_le_bytes());
    }
    hex_string(&hasher.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

pub fn lookup(dir: &Path, key: &str) -> Option<CacheEntry> {
    let path = entry_path(dir, key);
    let text = fs::read_to_string(&path).ok()?;
    match serde_json::from_str::<CacheEntry>(&text) {
        Ok(entry) if entry.engine == ENGINE_VERSION => Some(entry),
        Ok(_) => None,
        Err(_) => {
            eprintln!(
                "warning: corrupt cache entry {}, recomputing",
                path.display()
            );
            None
        }
    }
}

pub fn store(dir: &Path, key: &str, entry: &CacheEntry) {
    if fs::create_dir_all(dir).is_err() {
        return;
    }
    let path = entry_path(dir, key);
    let _ = fs::write(path, serde_json::to_string_pretty(entry).expect("cache entry"));
}

pub fn make_entry(class: &str, filter: &CensusFilter, n: usize, count: String) -> CacheEntry {
    CacheEntry {
        schema_version: SCHEMA_VERSION,
        engine: ENGINE_VERSION.to_string(),
        class: class.to_string(),
        filter: FilterRepr {
            min_degree: filter.min_degree,
            max_edges: filter.max_edges,
        },
        n,
        count,
    }
}
