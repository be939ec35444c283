//! OEIS b-file ingestion.
//!
//! A b-file is plain text with one `index value` pair per line; `#` starts
//! a comment line. Indices must be strictly increasing and values may be
//! arbitrarily large.

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BFileError {
    #[error("line {line}: expected 'index value', got {got:?}")]
    Malformed { line: usize, got: String },
    #[error("line {line}: invalid integer {token:?}")]
    BadInteger { line: usize, token: String },
    #[error("line {line}: index {index} does not increase")]
    NonIncreasing { line: usize, index: i64 },
}

/// Parsed `(index, value)` pairs, in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub entries: Vec<(i64, BigInt)>,
}

impl BFile {
    pub fn value(&self, index: i64) -> Option<&BigInt> {
        self.entries
            .binary_search_by_key(&index, |e| e.0)
            .ok()
            .map(|i| &self.entries[i].1)
    }
}

pub fn parse_bfile(text: &str) -> Result<BFile, BFileError> {
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(idx_tok), Some(val_tok), None) =
            (tokens.next(), tokens.next(), tokens.next())
        else {
            return Err(BFileError::Malformed { line, got: trimmed.to_string() });
        };
        let index: i64 = idx_tok
            .parse()
            .map_err(|_| BFileError::BadInteger { line, token: idx_tok.to_string() })?;
        let value: BigInt = val_tok
            .parse()
            .map_err(|_| BFileError::BadInteger { line, token: val_tok.to_string() })?;
        if let Some(&(prev, _)) = entries.last() {
            if index <= prev {
                return Err(BFileError::NonIncreasing { line, index });
            }
        }
        entries.push((index, value));
    }
    Ok(BFile { entries })
}
