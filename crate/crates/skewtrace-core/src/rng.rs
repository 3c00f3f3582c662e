//! Seeded random generation: ChaCha8 streams keyed by (seed, trial index)
//! so parallel and serial campaigns draw identical values.

#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
pub use rand_core::RngCore;

use crate::matrix::Complex64;

/// Base generator for a 64-bit seed (stream 0).
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent substream for one trial of a campaign. Streams never
/// overlap, so trials can run in any order or in parallel.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial.wrapping_add(1));
    rng
}

/// Uniform in (0, 1], from the top 53 bits.
fn uniform_open(rng: &mut impl RngCore) -> f64 {
    (((rng.next_u64() >> 11) + 1) as f64) * (1.0 / 9007199254740992.0)
}

/// Uniform in [0, 1).
pub fn uniform(rng: &mut impl RngCore) -> f64 {
    ((rng.next_u64() >> 11) as f64) * (1.0 / 9007199254740992.0)
}

/// Standard normal via Box-Muller.
pub fn standard_normal(rng: &mut impl RngCore) -> f64 {
    let u1 = uniform_open(rng);
    let u2 = uniform_open(rng);
    (-2.0 * u1.ln()).sqrt() * (2.0 * core::f64::consts::PI * u2).cos()
}

/// Standard complex Gaussian: independent N(0, 1/2) real and imaginary
/// parts, unit total variance.
pub fn standard_complex_normal(rng: &mut impl RngCore) -> Complex64 {
    let scale = core::f64::consts::FRAC_1_SQRT_2;
    Complex64::new(standard_normal(rng) * scale, standard_normal(rng) * scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_independent() {
        let mut a = trial_rng(42, 0);
        let mut b = trial_rng(42, 1);
        assert_ne!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn same_key_same_stream() {
        let mut a = trial_rng(42, 7);
        let mut b = trial_rng(42, 7);
        for _ in 0..16 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn normal_moments_sane() {
        let mut rng = seeded_rng(1);
        let n = 20_000;
        let mut sum = 0.0;
        let mut sq = 0.0;
        for _ in 0..n {
            let z = standard_normal(&mut rng);
            sum += z;
            sq += z * z;
        }
        let mean = sum / n as f64;
        let var = sq / n as f64 - mean * mean;
        assert!(mean.abs() < 0.03, "mean {mean}");
        assert!((var - 1.0).abs() < 0.05, "var {var}");
    }
}
