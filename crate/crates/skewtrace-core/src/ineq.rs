//! Signed-margin checkers for the uncertainty-relation trace
//! inequalities, scalar and operator-level. A check records both sides,
//! the margin `lhs - rhs`, and whether the margin clears `-tol`.

use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::skew::{covariance, power_mean, variance, w_alpha, wyd_i, wyd_j, wyd_u};
use crate::state::{density_from_matrix, real_power, DensityMatrix, Observable};
use crate::{CoreError, PSD_CLAMP_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InequalityId {
    Heisenberg21,
    Schrodinger,
    Luo23,
    Chain24,
    Chain27,
    Chain29,
    Conj210,
    ConjWRhs,
    Thm21,
    Main31,
    IntermediateIj,
    LiebConvexity,
    EigenPair36,
}

impl InequalityId {
    pub const ALL: [InequalityId; 13] = [
        InequalityId::Heisenberg21,
        InequalityId::Schrodinger,
        InequalityId::Luo23,
        InequalityId::Chain24,
        InequalityId::Chain27,
        InequalityId::Chain29,
        InequalityId::Conj210,
        InequalityId::ConjWRhs,
        InequalityId::Thm21,
        InequalityId::Main31,
        InequalityId::IntermediateIj,
        InequalityId::LiebConvexity,
        InequalityId::EigenPair36,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InequalityId::Heisenberg21 => "HEISENBERG_2_1",
            InequalityId::Schrodinger => "SCHRODINGER",
            InequalityId::Luo23 => "LUO_2_3",
            InequalityId::Chain24 => "CHAIN_2_4",
            InequalityId::Chain27 => "CHAIN_2_7",
            InequalityId::Chain29 => "CHAIN_2_9",
            InequalityId::Conj210 => "CONJ_2_10",
            InequalityId::ConjWRhs => "CONJ_W_RHS",
            InequalityId::Thm21 => "THM_2_1",
            InequalityId::Main31 => "MAIN_3_1",
            InequalityId::IntermediateIj => "INTERMEDIATE_IJ",
            InequalityId::LiebConvexity => "LIEB_CONVEXITY",
            InequalityId::EigenPair36 => "EIGEN_PAIR_3_6",
        }
    }

    /// Conjectures are expected to fail on some instances; everything
    /// else is a proven statement whose violation signals a bug.
    pub fn is_conjecture(self) -> bool {
        matches!(self, InequalityId::Conj210 | InequalityId::ConjWRhs)
    }

    pub fn from_str_id(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|id| id.as_str() == s)
    }
}

impl core::fmt::Display for InequalityId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Signed-margin verdict for one inequality on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCheck {
    pub id: InequalityId,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
    pub tol: f64,
}

impl InequalityCheck {
    pub fn new(id: InequalityId, lhs: f64, rhs: f64, tol: f64) -> Self {
        let margin = lhs - rhs;
        Self { id, lhs, rhs, margin, holds: margin >= -tol, tol }
    }
}

/// `|Tr[rho [A, B]]|^2`, the common right-hand side.
fn commutator_trace_sq(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
) -> Result<f64, CoreError> {
    let k = a.matrix().commutator(b.matrix())?;
    Ok(rho.matrix().matmul(&k)?.trace().norm_sqr())
}

/// Heisenberg: `V(A) V(B) >= 1/4 |Tr[rho [A,B]]|^2`.
pub fn heisenberg_check(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    tol: f64,
) -> Result<InequalityCheck, CoreError> {
    let lhs = variance(rho, a)? * variance(rho, b)?;
    let rhs = 0.25 * commutator_trace_sq(rho, a, b)?;
    Ok(InequalityCheck::new(InequalityId::Heisenberg21, lhs, rhs, tol))
}

/// Schrodinger refinement:
/// `V(A) V(B) - Cov_s(A,B)^2 >= 1/4 |Tr[rho [A,B]]|^2`,
/// with the symmetrized covariance `Cov_s = Re Tr[rho A_0 B_0]`
/// (the imaginary part of the raw covariance is the commutator term
/// itself, so subtracting the full squared modulus double-counts it
/// and breaks the bound).
pub fn schrodinger_check(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    tol: f64,
) -> Result<InequalityCheck, CoreError> {
    let cov = covariance(rho, a, b)?;
    let lhs = variance(rho, a)? * variance(rho, b)? - cov.re * cov.re;
    let rhs = 0.25 * commutator_trace_sq(rho, a, b)?;
    Ok(InequalityCheck::new(InequalityId::Schrodinger, lhs, rhs, tol))
}

/// Luo: `U(A) U(B) >= 1/4 |Tr[rho [A,B]]|^2` with the alpha = 1/2
/// uncertainty quantities.
pub fn luo_check(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    tol: f64,
) -> Result<InequalityCheck, CoreError> {
    let lhs = wyd_u(rho, a, 0.5)? * wyd_u(rho, b, 0.5)?;
    let rhs = 0.25 * commutator_trace_sq(rho, a, b)?;
    Ok(InequalityCheck::new(InequalityId::Luo23, lhs, rhs, tol))
}

/// The main inequality: `U_a(A) U_a(B) >= a(1-a) |Tr[rho [A,B]]|^2`.
pub fn main_theorem_check(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    alpha: f64,
    tol: f64,
) -> Result<InequalityCheck, CoreError> {
    let lhs = wyd_u(rho, a, alpha)? * wyd_u(rho, b, alpha)?;
    let rhs = alpha * (1.0 - alpha) * commutator_trace_sq(rho, a, b)?;
    Ok(InequalityCheck::new(InequalityId::Main31, lhs, rhs, tol))
}

/// The proof's intermediate bound, both ordered pairs:
/// `I_a(A) J_a(B) >= a(1-a) |Tr[rho [A,B]]|^2` and the swap.
pub fn intermediate_ij_check(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    alpha: f64,
    tol: f64,
) -> Result<[InequalityCheck; 2], CoreError> {
    let rhs = alpha * (1.0 - alpha) * commutator_trace_sq(rho, a, b)?;
    let ab = wyd_i(rho, a, alpha)? * wyd_j(rho, b, alpha)?;
    let ba = wyd_i(rho, b, alpha)? * wyd_j(rho, a, alpha)?;
    Ok([
        InequalityCheck::new(InequalityId::IntermediateIj, ab, rhs, tol),
        InequalityCheck::new(InequalityId::IntermediateIj, ba, rhs, tol),
    ])
}

/// The refuted conjecture: `U_a(A) U_a(B) >= 1/4 |Tr[rho [A,B]]|^2`.
pub fn conjecture_2_10_check(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    alpha: f64,
    tol: f64,
) -> Result<InequalityCheck, CoreError> {
    let lhs = wyd_u(rho, a, alpha)? * wyd_u(rho, b, alpha)?;
    let rhs = 0.25 * commutator_trace_sq(rho, a, b)?;
    Ok(InequalityCheck::new(InequalityId::Conj210, lhs, rhs, tol))
}

/// `1/4 |Tr[M^2 [A, B]]|^2` with `M = (rho^a + rho^(1-a))/2`.
fn power_mean_rhs(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    alpha: f64,
) -> Result<f64, CoreError> {
    let m = power_mean(rho, alpha)?;
    let msq = m.matmul(&m)?;
    let k = a.matrix().commutator(b.matrix())?;
    Ok(0.25 * msq.matmul(&k)?.trace().norm_sqr())
}

/// `W_a(A) W_a(B) >= 1/4 |Tr[M^2 [A,B]]|^2`, proven.
pub fn theorem_2_1_check(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    alpha: f64,
    tol: f64,
) -> Result<InequalityCheck, CoreError> {
    let lhs = w_alpha(rho, a, alpha)? * w_alpha(rho, b, alpha)?;
    let rhs = power_mean_rhs(rho, a, b, alpha)?;
    Ok(InequalityCheck::new(InequalityId::Thm21, lhs, rhs, tol))
}

/// The second refuted conjecture: same right-hand side but with the
/// U product on the left.
pub fn conjecture_w_rhs_check(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    alpha: f64,
    tol: f64,
) -> Result<InequalityCheck, CoreError> {
    let lhs = wyd_u(rho, a, alpha)? * wyd_u(rho, b, alpha)?;
    let rhs = power_mean_rhs(rho, a, b, alpha)?;
    Ok(InequalityCheck::new(InequalityId::ConjWRhs, lhs, rhs, tol))
}

/// The eight links of the ordering chains
/// `0 <= I <= U <= V` (at alpha = 1/2),
/// `I_a <= I <= J <= J_a`, and
/// `I_a <= U_a <= U` (alpha = 1/2 quantities unsubscripted).
pub fn ordering_chain_check(
    rho: &DensityMatrix,
    h: &Observable,
    alpha: f64,
    tol: f64,
) -> Result<Vec<InequalityCheck>, CoreError> {
    let v = variance(rho, h)?;
    let i_half = wyd_i(rho, h, 0.5)?;
    let j_half = wyd_j(rho, h, 0.5)?;
    let u_half = wyd_u(rho, h, 0.5)?;
    let i_a = wyd_i(rho, h, alpha)?;
    let j_a = wyd_j(rho, h, alpha)?;
    let u_a = wyd_u(rho, h, alpha)?;
    let mut checks = Vec::with_capacity(8);
    checks.push(InequalityCheck::new(InequalityId::Chain24, i_half, 0.0, tol));
    checks.push(InequalityCheck::new(InequalityId::Chain24, u_half, i_half, tol));
    checks.push(InequalityCheck::new(InequalityId::Chain24, v, u_half, tol));
    checks.push(InequalityCheck::new(InequalityId::Chain27, i_half, i_a, tol));
    checks.push(InequalityCheck::new(InequalityId::Chain27, j_half, i_half, tol));
    checks.push(InequalityCheck::new(InequalityId::Chain27, j_a, j_half, tol));
    checks.push(InequalityCheck::new(InequalityId::Chain29, u_a, i_a, tol));
    checks.push(InequalityCheck::new(InequalityId::Chain29, u_half, u_a, tol));
    Ok(checks)
}

/// The scalar function `F(t) = (1-2a)^2 (t-1)^2 - (t^a - t^(1-a))^2`,
/// nonnegative for all `t > 0` and `a` in `[0, 1]`.
pub fn scalar_f(t: f64, alpha: f64) -> Result<f64, CoreError> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(CoreError::NonPositiveArgument { value: t });
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(CoreError::InvalidAlpha { alpha });
    }
    let a = 1.0 - 2.0 * alpha;
    let d = t.powf(alpha) - t.powf(1.0 - alpha);
    Ok(a * a * (t - 1.0) * (t - 1.0) - d * d)
}

/// The per-eigenpair inequality behind the main theorem:
/// `(li+lj)^2 - (li^a lj^(1-a) + li^(1-a) lj^a)^2 >= 4a(1-a)(li-lj)^2`.
pub fn eigen_pair_inequality(
    lambda_i: f64,
    lambda_j: f64,
    alpha: f64,
    tol: f64,
) -> Result<InequalityCheck, CoreError> {
    if lambda_i < 0.0 || lambda_j < 0.0 || (lambda_i == 0.0 && lambda_j == 0.0) {
        return Err(CoreError::InvalidEigenvaluePair { lambda_i, lambda_j });
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(CoreError::InvalidAlpha { alpha });
    }
    let s = lambda_i + lambda_j;
    let p = real_power(lambda_i, alpha) * real_power(lambda_j, 1.0 - alpha)
        + real_power(lambda_i, 1.0 - alpha) * real_power(lambda_j, alpha);
    let lhs = s * s - p * p;
    let d = lambda_i - lambda_j;
    let rhs = 4.0 * alpha * (1.0 - alpha) * d * d;
    Ok(InequalityCheck::new(InequalityId::EigenPair36, lhs, rhs, tol))
}

/// Convexity of the skew information in the state:
/// `w I_{rho1} + (1-w) I_{rho2} >= I_{w rho1 + (1-w) rho2}`.
pub fn lieb_convexity_check(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    weight: f64,
    h: &Observable,
    alpha: f64,
    tol: f64,
) -> Result<InequalityCheck, CoreError> {
    if !(0.0..=1.0).contains(&weight) {
        return Err(CoreError::InvalidWeight { weight });
    }
    let mixed = rho1
        .matrix()
        .scale_re(weight)
        .add(&rho2.matrix().scale_re(1.0 - weight))?;
    let mixed = density_from_matrix(&mixed, PSD_CLAMP_TOL)?;
    let lhs = weight * wyd_i(rho1, h, alpha)? + (1.0 - weight) * wyd_i(rho2, h, alpha)?;
    let rhs = wyd_i(&mixed, h, alpha)?;
    Ok(InequalityCheck::new(InequalityId::LiebConvexity, lhs, rhs, tol))
}
