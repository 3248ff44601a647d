//! Point-set files.
//!
//! JSON: `{"k": 3, "container": "unit_cube", "points": [[...], ...]}`.
//! CSV: one point per row, `k` columns, no header.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Container, PointSet};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSetFile {
    pub k: usize,
    pub container: Container,
    pub points: Vec<Vec<f64>>,
}

impl From<&PointSet> for PointSetFile {
    fn from(set: &PointSet) -> Self {
        PointSetFile {
            k: set.dimension(),
            container: set.container(),
            points: set.rows(),
        }
    }
}

impl PointSetFile {
    pub fn into_point_set(self) -> Result<PointSet> {
        if let Some(row) = self.points.iter().find(|r| r.len() != self.k) {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: row.len(),
            });
        }
        PointSet::from_rows(self.points, self.container)
    }
}

pub fn to_json(set: &PointSet) -> String {
    serde_json::to_string_pretty(&PointSetFile::from(set)).expect("plain data serializes")
}

pub fn from_json(text: &str) -> Result<PointSet> {
    let file: PointSetFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_point_set()
}

pub fn to_csv(set: &PointSet) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for p in set.points() {
        w.serialize(p.coords()).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv is utf-8")
}

/// Reads CSV rows. The container is `unit_cube` when every coordinate lies in
/// `[0,1]` and `unconstrained` otherwise.
pub fn from_csv(text: &str) -> Result<PointSet> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let rows = r
        .deserialize::<Vec<f64>>()
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Parse(e.to_string()))?;
    if let Some(first) = rows.first() {
        if let Some(bad) = rows.iter().find(|r| r.len() != first.len()) {
            return Err(Error::DimensionMismatch {
                expected: first.len(),
                found: bad.len(),
            });
        }
    }
    PointSet::from_rows_detect(rows)
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Reads a point set; `.csv` files are CSV, anything else is JSON.
pub fn read_point_set(path: &Path) -> Result<PointSet> {
    let text = fs::read_to_string(path)?;
    if is_csv(path) {
        from_csv(&text)
    } else {
        from_json(&text)
    }
}

/// Writes a point set in the format implied by the extension.
pub fn write_point_set(path: &Path, set: &PointSet) -> Result<()> {
    let text = if is_csv(path) { to_csv(set) } else { to_json(set) + "\n" };
    fs::write(path, text)?;
    Ok(())
}
