//! File formats: the matrix JSON schema `{"dim", "re", "im"}` used by
//! every CLI command, the typed state variant, and JSON views of the
//! core result types with 12-significant-digit floats.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use skewtrace_core::state::{density, Observable};
use skewtrace_core::{Complex64, ComplexMatrix, DensityMatrix, InequalityCheck, SkewQuantities};

use crate::Error;

/// Kind tag carried by state files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Density,
    Observable,
}

/// On-disk matrix: row-major real and imaginary parts, both `dim x dim`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub kind: Option<MatrixKind>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix, kind: Option<MatrixKind>) -> Self {
        let n = m.dim();
        let row = |i: usize, f: fn(&Complex64) -> f64| (0..n).map(|j| f(&m[(i, j)])).collect();
        Self {
            dim: n,
            re: (0..n).map(|i| row(i, |z| z.re)).collect(),
            im: (0..n).map(|i| row(i, |z| z.im)).collect(),
            kind,
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, Error> {
        let n = self.dim;
        if self.re.len() != n
            || self.im.len() != n
            || self.re.iter().any(|r| r.len() != n)
            || self.im.iter().any(|r| r.len() != n)
        {
            return Err(Error::Format(format!(
                "re/im arrays must both be {n}x{n} (dim = {n})"
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(Complex64::new(self.re[i][j], self.im[i][j]));
            }
        }
        Ok(ComplexMatrix::new(n, entries)?)
    }
}

pub fn read_matrix_file(path: &Path) -> Result<MatrixFile, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn expect_kind(file: &MatrixFile, want: MatrixKind, path: &Path) -> Result<(), Error> {
    match file.kind {
        None => Ok(()), // untyped matrix files are accepted as either
        Some(k) if k == want => Ok(()),
        Some(k) => Err(Error::Format(format!(
            "{}: file is typed {k:?}, expected {want:?}",
            path.display()
        ))),
    }
}

pub fn read_density(path: &Path) -> Result<DensityMatrix, Error> {
    let file = read_matrix_file(path)?;
    expect_kind(&file, MatrixKind::Density, path)?;
    Ok(density(&file.to_matrix()?)?)
}

pub fn read_observable(path: &Path) -> Result<Observable, Error> {
    let file = read_matrix_file(path)?;
    expect_kind(&file, MatrixKind::Observable, path)?;
    Ok(Observable::new(file.to_matrix()?)?)
}

pub fn write_matrix_file(path: &Path, file: &MatrixFile) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(file)
        .map_err(|e| Error::Format(e.to_string()))?;
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Rounds to 12 significant digits, the precision all reports print.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn check_to_json(check: &InequalityCheck) -> Value {
    json!({
        "id": check.id.as_str(),
        "lhs": sig12(check.lhs),
        "rhs": sig12(check.rhs),
        "margin": sig12(check.margin),
        "holds": check.holds,
        "tol": check.tol,
    })
}

pub fn quantities_to_json(q: &SkewQuantities) -> Value {
    json!({
        "alpha": sig12(q.alpha),
        "V": sig12(q.variance),
        "I_alpha": sig12(q.i_alpha),
        "J_alpha": sig12(q.j_alpha),
        "U_alpha": sig12(q.u_alpha),
        "K_alpha": sig12(q.k_alpha),
        "L_alpha": sig12(q.l_alpha),
        "W_alpha": sig12(q.w_alpha),
    })
}
