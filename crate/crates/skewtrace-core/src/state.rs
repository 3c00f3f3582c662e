//! Validated quantum states and observables: construction, centering,
//! fractional powers, and seeded random ensembles.

use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand_core::RngCore;

use crate::eigen::{eigh, SpectralDecomposition};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::rng;
use crate::{CoreError, HERMITICITY_TOL, PSD_CLAMP_TOL};

/// A density operator: Hermitian, positive semidefinite, unit trace.
/// The spectrum is computed once at construction; after clamping and
/// renormalization the eigenvalues are nonnegative and sum to one, and
/// `matrix` is the reconstruction from that cleaned spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    spectrum: SpectralDecomposition,
}

/// A Hermitian observable.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self, CoreError> {
        let deviation = matrix.hermiticity_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(CoreError::NotHermitian { deviation });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

impl DensityMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Validates a candidate state. Eigenvalues in `[-tol, 0)` are clamped
/// to zero (numerical noise from Gram constructions); anything below
/// `-tol` is rejected. The trace is renormalized to exactly one.
pub fn density_from_matrix(m: &ComplexMatrix, tol: f64) -> Result<DensityMatrix, CoreError> {
    let spectrum = eigh(m, HERMITICITY_TOL)?;
    let mut eigenvalues: Vec<f64> = spectrum.eigenvalues.clone();
    for lambda in eigenvalues.iter_mut() {
        if *lambda < -tol {
            return Err(CoreError::NotPsd { eigenvalue: *lambda });
        }
        // Snap |lambda| < tol to zero: tiny positive residuals from
        // rank-deficient constructions would otherwise surface at
        // eps^alpha scale under fractional powers.
        if lambda.abs() < tol {
            *lambda = 0.0;
        }
    }
    let total: f64 = eigenvalues.iter().sum();
    if total <= tol.max(f64::EPSILON) {
        return Err(CoreError::ZeroTrace);
    }
    for lambda in eigenvalues.iter_mut() {
        *lambda /= total;
    }
    // Fold the division residual into the smallest nonzero eigenvalue:
    // with lambda_k = 1 - prefix and prefix in [1/2, 1], Sterbenz gives
    // prefix + (1 - prefix) == 1 exactly, so the sequential sum over the
    // descending spectrum is exactly one.
    if let Some(k) = eigenvalues.iter().rposition(|&l| l > 0.0) {
        let prefix: f64 = eigenvalues[..k].iter().sum();
        if 1.0 - prefix > 0.0 {
            eigenvalues[k] = 1.0 - prefix;
        }
    }
    let spectrum = SpectralDecomposition { eigenvalues, eigenvectors: spectrum.eigenvectors };
    let matrix = spectrum.reconstruct();
    Ok(DensityMatrix { matrix, spectrum })
}

/// Validates with the default clamping tolerance.
pub fn density(m: &ComplexMatrix) -> Result<DensityMatrix, CoreError> {
    density_from_matrix(m, PSD_CLAMP_TOL)
}

/// Random state from the Ginibre construction: `GG^dag / Tr[GG^dag]`
/// with `G` a dim x rank matrix of standard complex Gaussians.
pub fn random_density_with(
    dim: usize,
    rank: usize,
    rng: &mut impl RngCore,
) -> Result<DensityMatrix, CoreError> {
    if rank == 0 || rank > dim {
        return Err(CoreError::InvalidRank { rank, dim });
    }
    // G row-major, dim x rank
    let g: Vec<Complex64> = (0..dim * rank).map(|_| rng::standard_complex_normal(rng)).collect();
    let mut gram = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..rank {
                acc += g[i * rank + k] * g[j * rank + k].conj();
            }
            gram[(i, j)] = acc;
        }
    }
    density(&gram)
}

pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix, CoreError> {
    random_density_with(dim, rank, &mut rng::seeded_rng(seed))
}

/// Random observable `(G + G^dag)/2`, Hermitian by construction.
pub fn random_observable_with(dim: usize, rng: &mut impl RngCore) -> Observable {
    let mut g = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            g[(i, j)] = rng::standard_complex_normal(rng);
        }
    }
    let matrix = g.add(&g.adjoint()).expect("same dim").scale_re(0.5);
    Observable { matrix }
}

pub fn random_observable(dim: usize, seed: u64) -> Observable {
    random_observable_with(dim, &mut rng::seeded_rng(seed))
}

/// Expectation value `Tr[rho H]`; must be real for Hermitian inputs.
pub fn expectation(rho: &DensityMatrix, h: &Observable) -> Result<f64, CoreError> {
    let t = rho.matrix().matmul(h.matrix())?.trace();
    if t.im.abs() > HERMITICITY_TOL {
        return Err(CoreError::NonRealExpectation { imag: t.im });
    }
    Ok(t.re)
}

/// Centers an observable: `H_0 = H - Tr[rho H] I`, so `Tr[rho H_0] = 0`.
pub fn center(rho: &DensityMatrix, h: &Observable) -> Result<Observable, CoreError> {
    let mean = expectation(rho, h)?;
    let shifted = h
        .matrix()
        .sub(&ComplexMatrix::identity(h.dim()).scale_re(mean))?;
    Ok(Observable { matrix: shifted })
}

/// `rho^alpha` by spectral application of `x^alpha`, with the boundary
/// conventions `0^alpha = 0` for `alpha > 0` and `0^0 = 1` (so
/// `rho^0 = I` even for singular states).
pub fn fractional_power(rho: &DensityMatrix, alpha: f64) -> Result<ComplexMatrix, CoreError> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(CoreError::InvalidAlpha { alpha });
    }
    Ok(rho.spectrum().apply(|x| real_power(x, alpha)))
}

/// Scalar power on the clamped spectrum of a state: `x >= 0`,
/// `0^0 = 1`, `0^alpha = 0` for `alpha > 0`.
pub fn real_power(x: f64, alpha: f64) -> f64 {
    if x == 0.0 {
        if alpha == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        x.powf(alpha)
    }
}
