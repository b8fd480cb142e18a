//! Text format for integer matrices: one row per line, entries as
//! optionally-signed decimal integers separated by whitespace. Blank lines
//! and lines whose first non-blank character is '#' are ignored. Ragged rows
//! are rejected.

use std::str::FromStr;

use num::bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

pub fn parse_matrix(text: &str) -> Result<IntegerMatrix> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for token in trimmed.split_whitespace() {
            let v = BigInt::from_str(token).map_err(|_| {
                Error::Parse(format!("line {}: invalid integer '{token}'", lineno + 1))
            })?;
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse(format!(
                    "line {}: expected {} entries, found {}",
                    lineno + 1,
                    first.len(),
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("no matrix rows found".to_string()));
    }
    let cols = rows[0].len();
    let entries: Vec<BigInt> = rows.into_iter().flatten().collect();
    Ok(IntegerMatrix::from_entries(entries.len() / cols, cols, entries))
}

/// Render a matrix in the same text format, with right-aligned columns.
pub fn render_matrix(m: &IntegerMatrix) -> String {
    let widths: Vec<usize> = (0..m.cols())
        .map(|c| {
            (0..m.rows())
                .map(|r| m.get(r, c).to_string().len())
                .max()
                .unwrap_or(1)
        })
        .collect();
    let mut out = String::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if c > 0 {
                out.push(' ');
            }
            out.push_str(&format!("{:>width$}", m.get(r, c), width = widths[c]));
        }
        out.push('\n');
    }
    out
}
