//! Versioned on-disk cache of projection-table sweeps.
//!
//! The cache is a single JSON document: a header pinning the format
//! version, the dichotomy, and the engine options the results depend on; a
//! sha-256 checksum of the serialized body; and the body itself, sorted by
//! `(y, z)`. A header that does not match the requesting configuration, or
//! a checksum that does not match the body, invalidates the file: the
//! caller recomputes and rewrites it.

use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use counterpoint_core::dichotomy::StrongDichotomy;
use counterpoint_core::projection::ProjectionResult;
use counterpoint_core::ring::{FirstInterval, Projection};

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Engine options baked into cached results. Bump or extend when the
/// search semantics change, so stale caches are rejected instead of
/// silently reused.
#[derive(Serialize, Deserialize, PartialEq, Eq, Clone, Debug)]
pub struct EngineOptionsRecord {
    pub z_range: String,
    pub successor_aggregation: String,
}

impl EngineOptionsRecord {
    pub fn current() -> Self {
        EngineOptionsRecord {
            z_range: "all-residues".to_string(),
            successor_aggregation: "union-of-maximal".to_string(),
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Clone, Debug)]
pub struct CacheHeader {
    pub format_version: u32,
    pub modulus: u32,
    pub consonances: Vec<u32>,
    pub engine: EngineOptionsRecord,
}

impl CacheHeader {
    pub fn for_dichotomy(d: &StrongDichotomy) -> Self {
        CacheHeader {
            format_version: CACHE_FORMAT_VERSION,
            modulus: d.modulus().get(),
            consonances: d.consonances().iter().map(|r| r.value()).collect(),
            engine: EngineOptionsRecord::current(),
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Clone, Debug)]
pub struct CacheCell {
    pub y: u32,
    pub z: u32,
    pub max_score: usize,
    /// projections as `[t2, s, w1, w2]` (canonical, `t1 = 0`), sorted
    pub projections: Vec<[u32; 4]>,
    /// successors as `[cantus, interval]`, sorted
    pub successors: Vec<[u32; 2]>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Clone, Debug)]
pub struct CacheFile {
    pub header: CacheHeader,
    pub checksum: String,
    pub cells: Vec<CacheCell>,
}

fn body_checksum(cells: &[CacheCell]) -> String {
    let body = serde_json::to_string(cells).expect("cache cells serialize");
    let digest = Sha256::digest(body.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn to_cell(result: &ProjectionResult) -> CacheCell {
    CacheCell {
        y: result.y().value(),
        z: result.z().value(),
        max_score: result.max_score(),
        projections: result
            .projections()
            .iter()
            .map(|g| {
                [
                    g.t2().value(),
                    g.s().value(),
                    g.w1().value(),
                    g.w2().value(),
                ]
            })
            .collect(),
        successors: result
            .successors()
            .iter()
            .map(|eta| [eta.cantus().value(), eta.interval().value()])
            .collect(),
    }
}

fn from_cell(cell: &CacheCell, d: &StrongDichotomy) -> Result<ProjectionResult, String> {
    let m = d.modulus();
    let residue = |v: u32| m.residue(i64::from(v));
    let mut projections = BTreeSet::new();
    for &[t2, s, w1, w2] in &cell.projections {
        let g = Projection::canonical(residue(t2), residue(s), residue(w1), residue(w2))
            .map_err(|e| e.to_string())?;
        projections.insert(g);
    }
    let mut successors = BTreeSet::new();
    for &[c, x] in &cell.successors {
        successors.insert(FirstInterval::new(residue(c), residue(x)).expect("same modulus"));
    }
    ProjectionResult::from_parts(
        residue(cell.y),
        residue(cell.z),
        cell.max_score,
        projections,
        successors,
    )
    .map_err(|e| e.to_string())
}

/// Serializes and atomically replaces the cache at `path` (write to a
/// temporary sibling, then rename).
pub fn cache_write(
    path: &Path,
    d: &StrongDichotomy,
    results: &[ProjectionResult],
) -> io::Result<()> {
    let mut cells: Vec<CacheCell> = results.iter().map(to_cell).collect();
    cells.sort_by_key(|c| (c.y, c.z));
    let file = CacheFile {
        header: CacheHeader::for_dichotomy(d),
        checksum: body_checksum(&cells),
        cells,
    };
    let mut body = serde_json::to_string(&file).expect("cache file serializes");
    body.push('\n');
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, body)?;
    fs::rename(&tmp, path)
}

pub enum CacheOutcome {
    Hit(Vec<ProjectionResult>),
    /// Unusable cache, with the reason; the caller recomputes.
    Miss(String),
}

/// Reads and validates a cache file against the requesting configuration.
pub fn cache_read(path: &Path, d: &StrongDichotomy) -> CacheOutcome {
    let raw = match fs::read_to_string(path) {
        Ok(raw) => raw,
        Err(e) if e.kind() == io::ErrorKind::NotFound => {
            return CacheOutcome::Miss("no cache file".to_string());
        }
        Err(e) => return CacheOutcome::Miss(format!("unreadable cache: {e}")),
    };
    let file: CacheFile = match serde_json::from_str(&raw) {
        Ok(file) => file,
        Err(e) => return CacheOutcome::Miss(format!("malformed cache: {e}")),
    };
    let expected = CacheHeader::for_dichotomy(d);
    if file.header != expected {
        return CacheOutcome::Miss(format!(
            "header mismatch (cached {:?}, requested {:?})",
            file.header, expected
        ));
    }
    if body_checksum(&file.cells) != file.checksum {
        return CacheOutcome::Miss("body checksum mismatch".to_string());
    }
    let mut results = Vec::with_capacity(file.cells.len());
    for cell in &file.cells {
        match from_cell(cell, d) {
            Ok(result) => results.push(result),
            Err(e) => return CacheOutcome::Miss(format!("invalid cache cell: {e}")),
        }
    }
    CacheOutcome::Hit(results)
}
