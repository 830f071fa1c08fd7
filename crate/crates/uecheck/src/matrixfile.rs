//! Plain-text generator matrix files.
//!
//! Format: a header line `q n k`, then k lines of n whitespace-separated
//! integer symbol codes in `[0, q)`. Self-describing — the field order
//! travels with the matrix, so no sidecar configuration is needed.

use std::sync::Arc;

use thiserror::Error;

use crate::code::{CodeError, GeneratorMatrix};
use crate::field::{Field, FieldError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixFileError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

fn parse_err(line: usize, message: impl Into<String>) -> MatrixFileError {
    MatrixFileError::Parse { line, message: message.into() }
}

/// Parses the matrix file format into a validated generator matrix.
/// Line numbers in errors are 1-based.
pub fn parse_matrix(text: &str) -> Result<GeneratorMatrix, MatrixFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_no, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(parse_err(header_no, format!("header must be `q n k`, got {} fields", fields.len())));
    }
    let parse_num = |s: &str, what: &str| -> Result<u64, MatrixFileError> {
        s.parse::<u64>()
            .map_err(|_| parse_err(header_no, format!("{what} `{s}` is not a nonnegative integer")))
    };
    let q = parse_num(fields[0], "q")? as u32;
    let n = parse_num(fields[1], "n")? as usize;
    let k = parse_num(fields[2], "k")? as usize;
    if k < 1 || k > n {
        return Err(parse_err(header_no, format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    let field = Arc::new(Field::new(q)?);

    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(k);
    for _ in 0..k {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| parse_err(header_no, format!("expected {k} matrix rows, file ended early")))?;
        let mut row = Vec::with_capacity(n);
        for (col, tok) in line.split_whitespace().enumerate() {
            let value: u32 = tok.parse().map_err(|_| {
                parse_err(line_no, format!("column {}: `{tok}` is not a symbol code", col + 1))
            })?;
            if value >= q {
                return Err(parse_err(
                    line_no,
                    format!("column {}: symbol code {value} out of range for GF({q})", col + 1),
                ));
            }
            row.push(value);
        }
        if row.len() != n {
            return Err(parse_err(line_no, format!("expected {n} symbols, got {}", row.len())));
        }
        rows.push(row);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(parse_err(line_no, "trailing content after matrix rows"));
    }
    Ok(GeneratorMatrix::from_codes(field, n, &rows)?)
}

/// Serializes a generator matrix in the same format `parse_matrix` reads.
pub fn write_matrix(gen: &GeneratorMatrix) -> String {
    let mut out = format!("{} {} {}\n", gen.field().q(), gen.n(), gen.k());
    for row in gen.rows() {
        let line: Vec<String> = row.iter().map(|s| s.code().to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Fixed 12-significant-digit scientific formatting used by every CSV
/// emitter, so outputs are byte-deterministic.
pub fn fmt_sig12(x: f64) -> String {
    format!("{x:.11e}")
}
