//! JSON Lines persistence of censuses (`census_<n>.jsonl`, one skew morphism
//! per line) and Table-1-style summaries.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::census::{CensusError, CensusRecord};
use crate::skew::SkewMorphism;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}, line {line}: {reason}")]
    SchemaMismatch { path: PathBuf, line: usize, reason: String },
    #[error("{path}, line {line}: stored data fails verification: {reason}")]
    VerificationFailedOnLoad { path: PathBuf, line: usize, reason: String },
    #[error("census of Z_{0} has not been computed")]
    NotComputed(usize),
}

/// One line of a census file. Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StoreEntry {
    pub n: usize,
    pub images: Vec<usize>,
    pub order: usize,
    pub kernel_order: usize,
    pub pi: Vec<usize>,
    pub coset_preserving: bool,
    pub automorphism: bool,
    pub class_id: i64,
    pub schema_version: u32,
}

impl StoreEntry {
    pub fn of(phi: &SkewMorphism, class_id: Option<usize>) -> Self {
        StoreEntry {
            n: phi.n(),
            images: phi.images().to_vec(),
            order: phi.order(),
            kernel_order: phi.kernel_order(),
            pi: phi.pi().to_vec(),
            coset_preserving: phi.is_coset_preserving(),
            automorphism: phi.is_automorphism(),
            class_id: class_id.map_or(-1, |c| c as i64),
            schema_version: SCHEMA_VERSION,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Store {
    dir: PathBuf,
}

impl Store {
    /// Opens (creating if needed) a store directory.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|source| StoreError::Io { path: dir.clone(), source })?;
        Ok(Store { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, n: usize) -> PathBuf {
        self.dir.join(format!("census_{n}.jsonl"))
    }

    pub fn contains(&self, n: usize) -> bool {
        self.path(n).is_file()
    }

    pub fn save(&self, record: &CensusRecord) -> Result<(), StoreError> {
        let path = self.path(record.n());
        let text = serialize(record);
        // write-then-rename so readers never see a partial file
        let tmp = path.with_extension("jsonl.tmp");
        fs::write(&tmp, text).map_err(|source| StoreError::Io { path: tmp.clone(), source })?;
        fs::rename(&tmp, &path).map_err(|source| StoreError::Io { path: path.clone(), source })
    }

    /// Loads and re-verifies every entry, including the stored metadata and
    /// class ids.
    pub fn load(&self, n: usize) -> Result<CensusRecord, StoreError> {
        let path = self.path(n);
        if !path.is_file() {
            return Err(StoreError::NotComputed(n));
        }
        let text = fs::read_to_string(&path).map_err(|source| StoreError::Io { path: path.clone(), source })?;
        parse(n, &path, &text)
    }
}

/// Deterministic text of a census file.
pub fn serialize(record: &CensusRecord) -> String {
    let mut out = String::new();
    for e in record.entries() {
        let line = serde_json::to_string(&StoreEntry::of(&e.phi, e.class_id)).expect("entries serialize");
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn parse(n: usize, path: &Path, text: &str) -> Result<CensusRecord, StoreError> {
    let schema = |line: usize, reason: String| StoreError::SchemaMismatch { path: path.to_path_buf(), line, reason };
    let failed = |line: usize, reason: String| StoreError::VerificationFailedOnLoad { path: path.to_path_buf(), line, reason };

    let mut stored = Vec::new();
    let mut list = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let entry: StoreEntry = serde_json::from_str(raw).map_err(|e| schema(line, e.to_string()))?;
        if entry.schema_version != SCHEMA_VERSION {
            return Err(schema(line, format!("schema version {} (expected {SCHEMA_VERSION})", entry.schema_version)));
        }
        if entry.n != n {
            return Err(schema(line, format!("entry for Z_{} in the file of Z_{n}", entry.n)));
        }
        let phi = SkewMorphism::verify(n, entry.images.clone()).map_err(|e| failed(line, e.to_string()))?;
        let expected = StoreEntry { class_id: -1, ..entry.clone() };
        if StoreEntry::of(&phi, None) != expected {
            return Err(failed(line, "stored order, kernel, power function or flags differ".into()));
        }
        stored.push(entry);
        list.push(phi);
    }
    let record = CensusRecord::from_list(n, list).map_err(|e| match e {
        CensusError::DuplicateFound { images, .. } => failed(0, format!("duplicate entry {images}")),
        other => failed(0, other.to_string()),
    })?;
    for (line, (e, s)) in record.entries().iter().zip(&stored).enumerate() {
        if e.phi.images() != s.images.as_slice() {
            return Err(schema(line + 1, "entries are not in sorted order".into()));
        }
        if e.class_id.map_or(-1, |c| c as i64) != s.class_id {
            return Err(failed(line + 1, format!("class id {} but recomputed {:?}", s.class_id, e.class_id)));
        }
    }
    Ok(record)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Csv,
    Markdown,
}

/// One row per `n` in `from..=to` admitting a proper skew morphism.
pub fn emit_table(store: &Store, from: usize, to: usize, format: TableFormat) -> Result<String, StoreError> {
    let mut out = String::new();
    match format {
        TableFormat::Csv => out.push_str("n,proper,automorphisms,total,classes\n"),
        TableFormat::Markdown => {
            out.push_str("| n | proper | automorphisms | total | classes |\n");
            out.push_str("|---:|---:|---:|---:|---:|\n");
        }
    }
    for n in from.max(1)..=to {
        let c = store.load(n)?.counts();
        if c.proper == 0 {
            continue;
        }
        let _ = match format {
            TableFormat::Csv => writeln!(out, "{n},{},{},{},{}", c.proper, c.automorphisms, c.total(), c.classes),
            TableFormat::Markdown => {
                writeln!(out, "| {n} | {} | {} | {} | {} |", c.proper, c.automorphisms, c.total(), c.classes)
            }
        };
    }
    Ok(out)
}
