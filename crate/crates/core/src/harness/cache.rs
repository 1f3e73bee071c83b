use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use super::{Finding, HarnessError, PropertyId};

/// `(graph_key, property_id, config_hash)`.
pub type CacheKey = (String, PropertyId, String);

/// Append-only JSONL store of findings. When a key appears more than once
/// the last line wins.
#[derive(Debug, Default)]
pub struct Cache {
    path: Option<PathBuf>,
    entries: HashMap<CacheKey, Finding>,
}

impl Cache {
    /// A cache that only lives in memory.
    pub fn in_memory() -> Self {
        Cache::default()
    }

    /// Loads `path`, which need not exist yet. Malformed lines are reported
    /// with their 1-based line number.
    pub fn open(path: &Path) -> Result<Self, HarnessError> {
        let mut cache = Cache {
            path: Some(path.to_path_buf()),
            entries: HashMap::new(),
        };
        if !path.exists() {
            return Ok(cache);
        }
        for f in read_findings(path)? {
            cache.insert(f);
        }
        Ok(cache)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &str, property: PropertyId, config_hash: &str) -> Option<&Finding> {
        self.entries.get(&(key.to_string(), property, config_hash.to_string()))
    }

    pub fn insert(&mut self, f: Finding) {
        self.entries
            .insert((f.graph_key.clone(), f.property_id, f.config_hash.clone()), f);
    }

    /// All entries sorted by `(graph_key, property_id, config_hash)`.
    pub fn findings(&self) -> Vec<Finding> {
        let mut out: Vec<Finding> = self.entries.values().cloned().collect();
        out.sort_by(|a, b| {
            (&a.graph_key, a.property_id, &a.config_hash).cmp(&(&b.graph_key, b.property_id, &b.config_hash))
        });
        out
    }

    /// Opens the backing file for appending, or `None` for in-memory caches.
    pub(crate) fn appender(&self) -> Result<Option<BufWriter<File>>, HarnessError> {
        match &self.path {
            None => Ok(None),
            Some(p) => Ok(Some(BufWriter::new(
                OpenOptions::new().create(true).append(true).open(p)?,
            ))),
        }
    }
}

pub(crate) fn read_findings(path: &Path) -> Result<Vec<Finding>, HarnessError> {
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let f: Finding = serde_json::from_str(&line).map_err(|e| HarnessError::CorruptCache {
            line: i + 1,
            message: e.to_string(),
        })?;
        out.push(f);
    }
    Ok(out)
}

pub(crate) fn append_lines(w: &mut impl Write, findings: &[Finding]) -> std::io::Result<()> {
    for f in findings {
        writeln!(w, "{}", f.to_json_line())?;
    }
    Ok(())
}
