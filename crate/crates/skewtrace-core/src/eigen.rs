//! Hermitian eigendecomposition by cyclic Jacobi rotations, and spectral
//! application of scalar functions.

use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::matrix::{Complex64, ComplexMatrix};
use crate::CoreError;

/// Convergence threshold on the off-diagonal Frobenius norm, relative
/// to `||H||_F`.
const OFF_DIAG_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues (sorted non-increasing) and a unitary whose columns are
/// the matching orthonormal eigenvectors: `H = Q diag(eigenvalues) Q^dag`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Reconstructs `Q diag(lambda) Q^dag`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|x| x)
    }

    /// Applies a scalar function on the spectrum: `Q f(Lambda) Q^dag`.
    /// Hermitian by construction. See [`spectral_apply`] for the checked
    /// variant that rejects NaN/Inf function values.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let q = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n);
        for k in 0..n {
            let fv = f(self.eigenvalues[k]);
            if fv == 0.0 {
                continue;
            }
            for i in 0..n {
                let qik = q[(i, k)] * fv;
                for j in 0..n {
                    out[(i, j)] += qik * q[(j, k)].conj();
                }
            }
        }
        out
    }
}

/// `Q f(Lambda) Q^dag`, failing if `f` is undefined (NaN/Inf) at an
/// eigenvalue, e.g. a fractional power of a negative value.
pub fn spectral_apply(
    s: &SpectralDecomposition,
    f: impl Fn(f64) -> f64,
) -> Result<ComplexMatrix, CoreError> {
    for &lambda in &s.eigenvalues {
        if !f(lambda).is_finite() {
            return Err(CoreError::DomainError { eigenvalue: lambda });
        }
    }
    Ok(s.apply(f))
}

fn off_diagonal_norm(h: &ComplexMatrix) -> f64 {
    let n = h.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += h[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
///
/// `tol` is the relative Hermiticity tolerance on the input. Rotations
/// run until the off-diagonal Frobenius norm drops below
/// `1e-13 * ||H||_F`, capped at 100 sweeps. Eigenvalues come back sorted
/// descending; ties keep the rotation output order.
pub fn eigh(h: &ComplexMatrix, tol: f64) -> Result<SpectralDecomposition, CoreError> {
    let deviation = h.hermiticity_deviation();
    if deviation > tol {
        return Err(CoreError::NotHermitian { deviation });
    }
    let n = h.dim();

    // Work on the symmetrized copy so the iteration sees an exactly
    // Hermitian matrix.
    let mut a = h.add(&h.adjoint()).expect("same dim").scale_re(0.5);
    let mut q = ComplexMatrix::identity(n);
    let norm = a.frobenius_norm();
    let threshold = OFF_DIAG_TOL * norm;

    if n <= 1 || norm == 0.0 {
        let eigenvalues = (0..n).map(|i| a[(i, i)].re).collect();
        return Ok(sorted(SpectralDecomposition { eigenvalues, eigenvectors: q }));
    }

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            let eigenvalues = (0..n).map(|i| a[(i, i)].re).collect();
            return Ok(sorted(SpectralDecomposition { eigenvalues, eigenvectors: q }));
        }
        for p in 0..n {
            for qi in (p + 1)..n {
                rotate(&mut a, &mut q, p, qi);
            }
        }
    }

    let off = off_diagonal_norm(&a);
    if off <= threshold {
        let eigenvalues = (0..n).map(|i| a[(i, i)].re).collect();
        return Ok(sorted(SpectralDecomposition { eigenvalues, eigenvectors: q }));
    }
    Err(CoreError::NoConvergence { off_norm: off })
}

/// One complex Jacobi rotation annihilating the (p, q) entry.
fn rotate(a: &mut ComplexMatrix, q: &mut ComplexMatrix, p: usize, r: usize) {
    let apq = a[(p, r)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    // Phase factor reduces the pivot to a real symmetric 2x2 problem.
    let w = apq / mag;
    let app = a[(p, p)].re;
    let arr = a[(r, r)].re;
    let tau = (arr - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.dim();
    let cs = Complex64::new(c, 0.0);
    let sw = w * s;
    // columns: A <- A J
    for k in 0..n {
        let hp = a[(k, p)];
        let hq = a[(k, r)];
        a[(k, p)] = cs * hp - sw.conj() * hq;
        a[(k, r)] = sw * hp + cs * hq;
    }
    // rows: A <- J^dag A
    for k in 0..n {
        let hp = a[(p, k)];
        let hq = a[(r, k)];
        a[(p, k)] = cs * hp - sw * hq;
        a[(r, k)] = sw.conj() * hp + cs * hq;
    }
    // Pin the annihilated pair and real diagonal against rounding drift.
    a[(p, r)] = Complex64::new(0.0, 0.0);
    a[(r, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(r, r)] = Complex64::new(a[(r, r)].re, 0.0);
    // accumulate Q <- Q J
    for k in 0..n {
        let qp = q[(k, p)];
        let qq = q[(k, r)];
        q[(k, p)] = cs * qp - sw.conj() * qq;
        q[(k, r)] = sw * qp + cs * qq;
    }
}

/// Sorts eigenvalues descending, permuting eigenvector columns to match.
/// Stable, so equal eigenvalues keep the Jacobi output order.
fn sorted(s: SpectralDecomposition) -> SpectralDecomposition {
    let n = s.dim();
    let mut order: Vec<usize> = (0..n).collect();
    // insertion sort keeps this allocation-free and stable
    for i in 1..n {
        let mut j = i;
        while j > 0 && s.eigenvalues[order[j - 1]] < s.eigenvalues[order[j]] {
            order.swap(j - 1, j);
            j -= 1;
        }
    }
    let eigenvalues = order.iter().map(|&k| s.eigenvalues[k]).collect();
    let mut q = ComplexMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            q[(i, new_col)] = s.eigenvectors[(i, old_col)];
        }
    }
    SpectralDecomposition { eigenvalues, eigenvectors: q }
}
