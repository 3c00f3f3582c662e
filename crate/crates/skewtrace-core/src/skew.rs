//! The information quantities: variance, covariance, the skew
//! information I and its partner J (trace-formula and eigenbasis paths),
//! the uncertainty quantity U, and the commutator/anticommutator pair
//! K, L with their geometric mean W.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::matrix::{Complex64, ComplexMatrix};
use crate::state::{center, fractional_power, real_power, DensityMatrix, Observable};
use crate::CoreError;

/// Clamping window for quantities that are nonnegative in exact
/// arithmetic. Values in `[-tol, 0)` are rounding; below that is a bug.
fn clamp_nonneg(value: f64, tol: f64) -> Result<f64, CoreError> {
    if value < -tol {
        Err(CoreError::NegativeQuantity { value, tol })
    } else {
        Ok(value.max(0.0))
    }
}

fn check_alpha(alpha: f64) -> Result<(), CoreError> {
    if !(0.0..=1.0).contains(&alpha) || !alpha.is_finite() {
        return Err(CoreError::InvalidAlpha { alpha });
    }
    Ok(())
}

fn real_trace_of_product(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<f64, CoreError> {
    Ok(x.matmul(y)?.trace().re)
}

/// Variance `V = Tr[rho H_0^2]`.
pub fn variance(rho: &DensityMatrix, h: &Observable) -> Result<f64, CoreError> {
    let h0 = center(rho, h)?;
    let sq = h0.matrix().matmul(h0.matrix())?;
    clamp_nonneg(real_trace_of_product(rho.matrix(), &sq)?, 1e-12)
}

/// Covariance `Tr[rho A_0 B_0]`, complex in general.
pub fn covariance(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
) -> Result<Complex64, CoreError> {
    let a0 = center(rho, a)?;
    let b0 = center(rho, b)?;
    Ok(rho.matrix().matmul(a0.matrix())?.matmul(b0.matrix())?.trace())
}

/// Both trace terms of the skew information: `Tr[rho H_0^2]` and
/// `Tr[rho^alpha H_0 rho^(1-alpha) H_0]`.
fn skew_trace_terms(
    rho: &DensityMatrix,
    h: &Observable,
    alpha: f64,
) -> Result<(f64, f64), CoreError> {
    check_alpha(alpha)?;
    let h0 = center(rho, h)?;
    let sq = h0.matrix().matmul(h0.matrix())?;
    let direct = real_trace_of_product(rho.matrix(), &sq)?;
    let pa = fractional_power(rho, alpha)?;
    let pb = fractional_power(rho, 1.0 - alpha)?;
    let cross = pa
        .matmul(h0.matrix())?
        .matmul(&pb)?
        .matmul(h0.matrix())?
        .trace()
        .re;
    Ok((direct, cross))
}

/// Skew information `I = Tr[rho H_0^2] - Tr[rho^alpha H_0 rho^(1-alpha) H_0]`.
pub fn wyd_i(rho: &DensityMatrix, h: &Observable, alpha: f64) -> Result<f64, CoreError> {
    let (direct, cross) = skew_trace_terms(rho, h, alpha)?;
    clamp_nonneg(direct - cross, 1e-10)
}

/// `J = Tr[rho H_0^2] + Tr[rho^alpha H_0 rho^(1-alpha) H_0]`.
pub fn wyd_j(rho: &DensityMatrix, h: &Observable, alpha: f64) -> Result<f64, CoreError> {
    let (direct, cross) = skew_trace_terms(rho, h, alpha)?;
    clamp_nonneg(direct + cross, 1e-10)
}

/// The centered observable expressed in the eigenbasis of the state:
/// `Q^dag H_0 Q`.
fn centered_in_eigenbasis(
    rho: &DensityMatrix,
    h: &Observable,
) -> Result<ComplexMatrix, CoreError> {
    let h0 = center(rho, h)?;
    let q = &rho.spectrum().eigenvectors;
    q.adjoint().matmul(h0.matrix())?.matmul(q)
}

/// Eigenbasis route for I: the sum over eigenpairs i < j of
/// `(l_i + l_j - l_i^a l_j^(1-a) - l_i^(1-a) l_j^a) |<phi_i|H_0|phi_j>|^2`.
/// Independent oracle for [`wyd_i`].
pub fn wyd_i_eigensum(rho: &DensityMatrix, h: &Observable, alpha: f64) -> Result<f64, CoreError> {
    check_alpha(alpha)?;
    let g = centered_in_eigenbasis(rho, h)?;
    let lambda = rho.eigenvalues();
    let n = lambda.len();
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let li = lambda[i];
            let lj = lambda[j];
            let weight = li + lj
                - real_power(li, alpha) * real_power(lj, 1.0 - alpha)
                - real_power(li, 1.0 - alpha) * real_power(lj, alpha);
            sum += weight * g[(i, j)].norm_sqr();
        }
    }
    Ok(sum)
}

/// Eigenbasis lower bound for J: same sum with plus signs. Always at
/// most `wyd_j`; the gap is the dropped diagonal term.
pub fn wyd_j_eigensum_lower(
    rho: &DensityMatrix,
    h: &Observable,
    alpha: f64,
) -> Result<f64, CoreError> {
    check_alpha(alpha)?;
    let g = centered_in_eigenbasis(rho, h)?;
    let lambda = rho.eigenvalues();
    let n = lambda.len();
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let li = lambda[i];
            let lj = lambda[j];
            let weight = li + lj
                + real_power(li, alpha) * real_power(lj, 1.0 - alpha)
                + real_power(li, 1.0 - alpha) * real_power(lj, alpha);
            sum += weight * g[(i, j)].norm_sqr();
        }
    }
    Ok(sum)
}

/// Relative agreement test between two routes to the same quantity.
fn assert_consistent(a: f64, b: f64, rel_tol: f64) -> Result<(), CoreError> {
    let scale = a.abs().max(b.abs()).max(1.0);
    let delta = (a - b).abs();
    if delta > rel_tol * scale {
        return Err(CoreError::InconsistentFormulas { delta });
    }
    Ok(())
}

/// The uncertainty quantity `U = sqrt(V^2 - (V - I)^2) = sqrt(I J)`.
/// Both radicands are computed and must agree to 1e-9 relative; a
/// radicand below -1e-12 is reported as an inconsistency rather than
/// clamped.
pub fn wyd_u(rho: &DensityMatrix, h: &Observable, alpha: f64) -> Result<f64, CoreError> {
    let v = variance(rho, h)?;
    let (direct, cross) = skew_trace_terms(rho, h, alpha)?;
    let i = clamp_nonneg(direct - cross, 1e-10)?;
    let j = clamp_nonneg(direct + cross, 1e-10)?;
    let rad_v = v * v - (v - i) * (v - i);
    let rad_ij = i * j;
    assert_consistent(rad_v, rad_ij, 1e-9)?;
    Ok(clamp_nonneg(rad_v, 1e-12)?.sqrt())
}

/// The operator mean `M = (rho^alpha + rho^(1-alpha)) / 2`.
pub fn power_mean(rho: &DensityMatrix, alpha: f64) -> Result<ComplexMatrix, CoreError> {
    check_alpha(alpha)?;
    let pa = fractional_power(rho, alpha)?;
    let pb = fractional_power(rho, 1.0 - alpha)?;
    Ok(pa.add(&pb)?.scale_re(0.5))
}

/// `K = 1/2 Tr[(i[M, H_0])^2]`, nonnegative since `i[M, H_0]` is
/// Hermitian. At alpha = 1/2 this is the plain skew information.
pub fn k_alpha(rho: &DensityMatrix, h: &Observable, alpha: f64) -> Result<f64, CoreError> {
    let m = power_mean(rho, alpha)?;
    let h0 = center(rho, h)?;
    let c = m.commutator(h0.matrix())?;
    // (iC)^2 = -C^2 for the anti-Hermitian commutator
    clamp_nonneg(-0.5 * real_trace_of_product(&c, &c)?, 1e-10)
}

/// `L = 1/2 Tr[{M, H_0}^2]`, nonnegative since the anticommutator is
/// Hermitian.
pub fn l_alpha(rho: &DensityMatrix, h: &Observable, alpha: f64) -> Result<f64, CoreError> {
    let m = power_mean(rho, alpha)?;
    let h0 = center(rho, h)?;
    let a = m.anticommutator(h0.matrix())?;
    clamp_nonneg(0.5 * real_trace_of_product(&a, &a)?, 1e-10)
}

/// `W = sqrt(K L)`.
pub fn w_alpha(rho: &DensityMatrix, h: &Observable, alpha: f64) -> Result<f64, CoreError> {
    Ok((k_alpha(rho, h, alpha)? * l_alpha(rho, h, alpha)?).sqrt())
}

/// Every quantity at one `(rho, H, alpha)`, cross-checked:
/// `U^2 = I J` and `W^2 = K L` both to 1e-9 relative.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewQuantities {
    pub alpha: f64,
    pub variance: f64,
    pub i_alpha: f64,
    pub j_alpha: f64,
    pub u_alpha: f64,
    pub k_alpha: f64,
    pub l_alpha: f64,
    pub w_alpha: f64,
}

pub fn compute_all(
    rho: &DensityMatrix,
    h: &Observable,
    alpha: f64,
) -> Result<SkewQuantities, CoreError> {
    let variance = variance(rho, h)?;
    let i = wyd_i(rho, h, alpha)?;
    let j = wyd_j(rho, h, alpha)?;
    let u = wyd_u(rho, h, alpha)?;
    let k = k_alpha(rho, h, alpha)?;
    let l = l_alpha(rho, h, alpha)?;
    let w = (k * l).sqrt();
    assert_consistent(u * u, i * j, 1e-9)?;
    assert_consistent(w * w, k * l, 1e-9)?;
    Ok(SkewQuantities {
        alpha,
        variance,
        i_alpha: i,
        j_alpha: j,
        u_alpha: u,
        k_alpha: k,
        l_alpha: l,
        w_alpha: w,
    })
}
