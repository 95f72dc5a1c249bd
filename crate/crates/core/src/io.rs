//! Matrix files and number formatting.
//!
//! A matrix file is a JSON object `{"dims": [d1, ...], "re": [[...]], "im": [[...]]}`
//! with row-major real and imaginary parts. `im` may be omitted for real
//! matrices; ragged rows are rejected.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::operators::{DensityMatrix, Observable};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dims: Vec<usize>,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

fn check_rectangular(name: &str, rows: &[Vec<f64>], n: usize) -> Result<()> {
    if rows.len() != n {
        return Err(Error::Parse(format!("'{name}' has {} rows, expected {n}", rows.len())));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::Parse(format!("'{name}' row {i} has {} entries, expected {n}", r.len())));
    }
    Ok(())
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix, dims: &[usize]) -> Self {
        let n = m.rows();
        let re = (0..n).map(|i| (0..n).map(|j| m[(i, j)].re).collect()).collect();
        let im = (0..n).map(|i| (0..n).map(|j| m[(i, j)].im).collect()).collect();
        Self {
            dims: dims.to_vec(),
            re,
            im: Some(im),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.re.len();
        if n == 0 {
            return Err(Error::Parse("matrix is empty".into()));
        }
        check_rectangular("re", &self.re, n)?;
        if let Some(im) = &self.im {
            check_rectangular("im", im, n)?;
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let im = self.im.as_ref().map_or(0.0, |m| m[i][j]);
                data.push(Complex64::new(self.re[i][j], im));
            }
        }
        ComplexMatrix::new(n, n, data)
    }
}

pub fn parse_matrix_json(text: &str) -> Result<MatrixFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_matrix_file(path: &Path) -> Result<MatrixFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix_json(&text)
}

/// Validated density matrix from a matrix file.
pub fn load_state(path: &Path) -> Result<DensityMatrix> {
    let f = read_matrix_file(path)?;
    DensityMatrix::new(f.to_matrix()?, f.dims)
}

/// Hermitian observable from a matrix file; `dims` is only checked for
/// consistency with the matrix size.
pub fn load_observable(path: &Path) -> Result<Observable> {
    let f = read_matrix_file(path)?;
    let m = f.to_matrix()?;
    let prod: usize = f.dims.iter().product();
    if prod != m.rows() {
        return Err(Error::SubsystemMismatch {
            dims: f.dims,
            dim: m.rows(),
        });
    }
    Observable::new(m)
}

pub fn write_matrix_file(path: &Path, m: &ComplexMatrix, dims: &[usize]) -> Result<()> {
    let text = serde_json::to_string_pretty(&MatrixFile::from_matrix(m, dims))
        .map_err(|e| Error::Parse(e.to_string()))?;
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
}

/// Significant digits for JSON output.
pub const JSON_DIGITS: usize = 15;
/// Significant digits for CSV output.
pub const CSV_DIGITS: usize = 12;

/// `x` rounded to `digits` significant digits.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

/// Shortest decimal form of `x` rounded to `digits` significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    let r = round_significant(x, digits);
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r}")
    }
}

/// Rounds every number in a JSON value to [`JSON_DIGITS`] significant digits.
pub fn round_json(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Number(n) => {
            if let Some(x) = n.as_f64() {
                if n.is_f64() {
                    if let Some(r) = serde_json::Number::from_f64(round_significant(x, JSON_DIGITS)) {
                        *n = r;
                    }
                }
            }
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(round_json),
        serde_json::Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

/// Pretty JSON with numbers rounded to [`JSON_DIGITS`] significant digits.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    round_json(&mut v);
    serde_json::to_string_pretty(&v).map_err(|e| Error::Parse(e.to_string()))
}
