use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::graph::CanonicalCode;
use crate::poly::IntPoly;

const FORMAT: &str = "chromaroot-memo";
const VERSION: u32 = 1;

/// Concurrent map from canonical code to chromatic polynomial. Values are a
/// function of the key, so racing inserts are harmless.
#[derive(Debug, Default)]
pub struct MemoStore {
    map: DashMap<CanonicalCode, IntPoly>,
}

#[derive(Serialize, Deserialize)]
struct MemoFile {
    format: String,
    version: u32,
    entries: BTreeMap<String, IntPoly>,
}

impl MemoStore {
    pub fn new() -> Self {
        MemoStore::default()
    }

    pub fn get(&self, code: &CanonicalCode) -> Option<IntPoly> {
        self.map.get(code).map(|e| e.value().clone())
    }

    pub fn insert(&self, code: CanonicalCode, poly: IntPoly) {
        self.map.insert(code, poly);
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn clear(&self) {
        self.map.clear();
    }

    /// Reads a store written by [`MemoStore::save`].
    pub fn load(path: &Path) -> io::Result<Self> {
        let text = fs::read_to_string(path)?;
        let file: MemoFile = serde_json::from_str(&text)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
        if file.format != FORMAT || file.version != VERSION {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                format!("unsupported memo file {} v{}", file.format, file.version),
            ));
        }
        let store = MemoStore::new();
        for (key, poly) in file.entries {
            store.insert(CanonicalCode::from_bytes(key.into_bytes()), poly);
        }
        Ok(store)
    }

    /// Writes entries sorted by code, so equal stores give equal files.
    pub fn save(&self, path: &Path) -> io::Result<()> {
        let entries = self
            .map
            .iter()
            .map(|e| (String::from_utf8_lossy(e.key().as_bytes()).into_owned(), e.value().clone()))
            .collect();
        let file = MemoFile { format: FORMAT.into(), version: VERSION, entries };
        let text = serde_json::to_string(&file).map_err(io::Error::other)?;
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text)?;
        fs::rename(tmp, path)
    }
}
