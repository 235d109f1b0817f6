//! Reading JSON arguments given either inline or as a file path.

use std::path::Path;

use congrusep::exactlin::{IntegerMatrix, RationalMatrix};
use congrusep::{Error, Result};
use serde_json::Value;

/// Parses `arg` as JSON if it looks like JSON, otherwise reads it as a file.
pub fn json_arg(arg: &str) -> Result<Value> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        arg.to_string()
    } else {
        read_file(Path::new(arg))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{arg}: {e}")))
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))
}

pub fn rational_matrix(arg: &str) -> Result<RationalMatrix> {
    let v = json_arg(arg)?;
    serde_json::from_value(v).map_err(|e| Error::Malformed(format!("matrix: {e}")))
}

pub fn integer_matrix(arg: &str) -> Result<IntegerMatrix> {
    let v = json_arg(arg)?;
    serde_json::from_value(v).map_err(|e| Error::Malformed(format!("matrix: {e}")))
}

/// A list of square integer matrices of a common size. An empty list needs
/// the size from `dim`.
pub fn generators(arg: &str, dim: Option<usize>) -> Result<(Vec<IntegerMatrix>, usize)> {
    let v = json_arg(arg)?;
    let gens: Vec<IntegerMatrix> =
        serde_json::from_value(v).map_err(|e| Error::Malformed(format!("generators: {e}")))?;
    let n = match (gens.first(), dim) {
        (Some(g), _) => g.dim()?,
        (None, Some(n)) => n,
        (None, None) => return Err(Error::Malformed("empty generator list needs --dim".into())),
    };
    if let Some(d) = dim {
        if d != n {
            return Err(Error::DimensionMismatch(format!("--dim {d} but generators are {n}×{n}")));
        }
    }
    if gens.iter().any(|g| g.rows() != n || g.cols() != n) {
        return Err(Error::DimensionMismatch(format!("expected {n}×{n} generators")));
    }
    Ok((gens, n))
}

/// Comma-separated positive integers, e.g. `"2,3,4,5"`.
pub fn integer_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| Error::Malformed(format!("not a positive integer: {t:?}"))))
        .collect()
}
