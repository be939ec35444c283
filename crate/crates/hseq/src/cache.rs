//! On-disk row cache: one plain-text record per `n`, written atomically.
//!
//! Record format is `n: v0,v1,...,vd` — diff-friendly, exact at any
//! magnitude. A record must carry exactly `d_n + 1` values to be accepted.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use thiserror::Error;

use crate::oracle::HRow;
use crate::ri::frame;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("corrupt cache record {path}: {reason}")]
    Corrupt { path: PathBuf, reason: String },
}

/// A directory of row records.
#[derive(Debug, Clone)]
pub struct RowCache {
    dir: PathBuf,
}

impl RowCache {
    pub fn new<P: Into<PathBuf>>(dir: P) -> Self {
        RowCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, n: u32) -> PathBuf {
        self.dir.join(format!("{n:05}.row"))
    }

    /// Writes a record via a temporary file and rename, so readers never
    /// observe a partial record.
    pub fn store(&self, row: &HRow) -> Result<(), CacheError> {
        let io = |source| CacheError::Io { path: self.path(row.n), source };
        fs::create_dir_all(&self.dir).map_err(io)?;
        let line = format!("{}: {}\n", row.n, join_values(&row.values));
        let tmp = self.dir.join(format!("{:05}.row.tmp", row.n));
        {
            let mut f = fs::File::create(&tmp).map_err(io)?;
            f.write_all(line.as_bytes()).map_err(io)?;
            f.sync_all().map_err(io)?;
        }
        fs::rename(&tmp, self.path(row.n)).map_err(io)
    }

    /// Reads the record for `n`, if present. Records that parse but do not
    /// carry `n` and exactly `d_n + 1` values are rejected as corrupt.
    pub fn load(&self, n: u32) -> Result<Option<HRow>, CacheError> {
        let path = self.path(n);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        let corrupt = |reason: String| CacheError::Corrupt { path: path.clone(), reason };
        let (head, rest) = text
            .split_once(':')
            .ok_or_else(|| corrupt("missing ':'".into()))?;
        let rec_n: u32 = head
            .trim()
            .parse()
            .map_err(|_| corrupt(format!("bad n {head:?}")))?;
        if rec_n != n {
            return Err(corrupt(format!("record claims n = {rec_n}")));
        }
        let values: Vec<BigUint> = rest
            .trim()
            .split(',')
            .map(|tok| tok.trim().parse::<BigUint>())
            .collect::<Result<_, _>>()
            .map_err(|e| corrupt(format!("bad value: {e}")))?;
        if values.len() != frame(n).d as usize + 1 {
            return Err(corrupt(format!(
                "expected {} values, found {}",
                frame(n).d + 1,
                values.len()
            )));
        }
        Ok(Some(HRow { n, values }))
    }

    /// Loads the row for `n`, computing and storing it on a miss.
    pub fn load_or_compute(&self, n: u32) -> Result<HRow, CacheError> {
        if let Some(row) = self.load(n)? {
            return Ok(row);
        }
        let row = crate::oracle::h_row(n);
        self.store(&row)?;
        Ok(row)
    }
}

fn join_values(values: &[BigUint]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
