//! Readers for vectors, matrices and partitions.
//!
//! Vectors are JSON arrays of numbers and partitions JSON arrays of 1-based
//! blocks. Matrices are JSON arrays of rows or comma-separated text, one row
//! per line.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::partition::Partition;
use crate::spectral::SymmetricMatrix;

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
}

pub fn parse_vector(s: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> = serde_json::from_str(s).map_err(json_error)?;
    if v.is_empty() {
        return Err(Error::parse("vector", "vector must be nonempty"));
    }
    Ok(v)
}

/// JSON rows when the text starts with `[`, comma-separated values otherwise.
pub fn parse_matrix(s: &str) -> Result<Matrix> {
    if s.trim_start().starts_with('[') {
        let rows: Vec<Vec<f64>> = serde_json::from_str(s).map_err(json_error)?;
        return Matrix::from_rows(&rows);
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(s.as_bytes());
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::parse(format!("line {}", line + 1), e.to_string()))?;
        let row = record
            .iter()
            .enumerate()
            .map(|(col, field)| {
                field.parse::<f64>().map_err(|e| {
                    Error::parse(format!("line {} column {}", line + 1, col + 1), format!("{field:?}: {e}"))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse("matrix", "matrix must be nonempty"));
    }
    Matrix::from_rows(&rows)
}

pub fn parse_symmetric(s: &str) -> Result<SymmetricMatrix> {
    SymmetricMatrix::new(parse_matrix(s)?)
}

/// `[[1, 2], [3]]`-style blocks with 1-based indices.
pub fn parse_partition(n: usize, s: &str) -> Result<Partition> {
    let blocks: Vec<Vec<usize>> = serde_json::from_str(s).map_err(json_error)?;
    Partition::from_one_based(n, &blocks)
}
