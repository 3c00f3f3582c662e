//! Dense square complex matrices: the carrier type for states and
//! observables, with the handful of algebraic operations everything
//! else is built from.

use alloc::vec;
use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::CoreError;

pub type Complex64 = num_complex::Complex<f64>;

/// Dense `dim x dim` complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting NaN/Inf.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self, CoreError> {
        if entries.len() != dim * dim {
            return Err(CoreError::BadShape { dim, len: entries.len() });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(CoreError::NonFiniteEntry);
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    fn check_dims(&self, other: &Self) -> Result<(), CoreError> {
        if self.dim != other.dim {
            return Err(CoreError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, CoreError> {
        self.check_dims(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, CoreError> {
        self.check_dims(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { dim: self.dim, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CoreError> {
        self.check_dims(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { dim: self.dim, entries })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let entries = self.entries.iter().map(|z| z * factor).collect();
        Self { dim: self.dim, entries }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `[X, Y] = XY - YX`; anti-Hermitian when both operands are Hermitian.
    pub fn commutator(&self, other: &Self) -> Result<Self, CoreError> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    /// `{X, Y} = XY + YX`; Hermitian when both operands are Hermitian.
    pub fn anticommutator(&self, other: &Self) -> Result<Self, CoreError> {
        self.matmul(other)?.add(&other.matmul(self)?)
    }

    /// Relative deviation from Hermiticity, `||H - H^dag||_F / max(1, ||H||_F)`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let scale = self.frobenius_norm().max(1.0);
        self.sub(&self.adjoint()).expect("same dim").frobenius_norm() / scale
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }
}

impl core::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Pauli-Y-like matrix [[0, i], [-i, 0]].
    pub(crate) fn mat_a() -> ComplexMatrix {
        ComplexMatrix::new(2, vec![c(0.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(0.0, 0.0)]).unwrap()
    }

    /// Pauli-X matrix [[0, 1], [1, 0]].
    pub(crate) fn mat_b() -> ComplexMatrix {
        ComplexMatrix::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = mat_a();
        let i = ComplexMatrix::identity(2);
        assert_eq!(i.matmul(&a).unwrap(), a);
        assert_eq!(a.matmul(&i).unwrap(), a);
    }

    #[test]
    fn hand_multiplied_product() {
        // A*B = [[i, 0], [0, -i]]
        let p = mat_a().matmul(&mat_b()).unwrap();
        assert_eq!(p[(0, 0)], c(0.0, 1.0));
        assert_eq!(p[(0, 1)], c(0.0, 0.0));
        assert_eq!(p[(1, 0)], c(0.0, 0.0));
        assert_eq!(p[(1, 1)], c(0.0, -1.0));
    }

    #[test]
    fn diagonal_times_identity() {
        let d = ComplexMatrix::diag(&[0.75, 0.25]);
        let i = ComplexMatrix::identity(2);
        assert_eq!(d.matmul(&i).unwrap(), d);
    }

    #[test]
    fn trace_of_state() {
        let d = ComplexMatrix::diag(&[0.75, 0.25]);
        assert_eq!(d.trace(), c(1.0, 0.0));
    }

    #[test]
    fn adjoint_is_involution() {
        let a = mat_a();
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn zero_norm() {
        assert_eq!(ComplexMatrix::zeros(3).frobenius_norm(), 0.0);
    }

    #[test]
    fn commutator_with_self_vanishes() {
        let a = mat_a();
        assert_eq!(a.commutator(&a).unwrap().frobenius_norm(), 0.0);
    }

    #[test]
    fn commutator_of_pauli_pair() {
        // [A, B] = diag(2i, -2i)
        let k = mat_a().commutator(&mat_b()).unwrap();
        assert_eq!(k[(0, 0)], c(0.0, 2.0));
        assert_eq!(k[(1, 1)], c(0.0, -2.0));
        assert_eq!(k[(0, 1)], c(0.0, 0.0));
        assert_eq!(k[(1, 0)], c(0.0, 0.0));
    }

    #[test]
    fn commuting_diagonals() {
        let d = ComplexMatrix::diag(&[1.0, 2.0]);
        let e = ComplexMatrix::diag(&[3.0, -1.0]);
        assert_eq!(d.commutator(&e).unwrap().frobenius_norm(), 0.0);
    }

    #[test]
    fn anticommutator_edge_cases() {
        let b = mat_b();
        let zero = ComplexMatrix::zeros(2);
        assert_eq!(b.anticommutator(&zero).unwrap(), zero);
        let twice = ComplexMatrix::identity(2).anticommutator(&b).unwrap();
        assert_eq!(twice, b.scale_re(2.0));
    }

    #[test]
    fn anticommutator_diag_with_pauli_x() {
        // {diag(m1,m2), X} = (m1+m2) X
        let m = ComplexMatrix::diag(&[0.7, 0.3]);
        let got = m.anticommutator(&mat_b()).unwrap();
        let want = mat_b().scale_re(1.0);
        assert!(got.sub(&want).unwrap().frobenius_norm() < 1e-15);
    }

    #[test]
    fn rejects_non_finite() {
        let err = ComplexMatrix::new(1, vec![c(f64::NAN, 0.0)]).unwrap_err();
        assert_eq!(err, CoreError::NonFiniteEntry);
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(matches!(a.matmul(&b), Err(CoreError::DimensionMismatch { .. })));
    }
}
