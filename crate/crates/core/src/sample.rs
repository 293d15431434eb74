//! Deterministic sampling shared by randomized checks and the CLI.
//!
//! Every randomized routine takes an explicit seed and runs ChaCha8, so a
//! given seed reproduces the identical sample stream on any platform.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5EED;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform rational with numerator in `[-bound, bound]` and denominator in
/// `[1, den_bound]`.
pub fn rand_rational(rng: &mut ChaCha8Rng, bound: i64, den_bound: i64) -> BigRational {
    assert!(bound >= 0 && den_bound >= 1);
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=den_bound);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Uniform nonzero positive rational, for slopes.
pub fn rand_positive_rational(rng: &mut ChaCha8Rng, bound: i64, den_bound: i64) -> BigRational {
    assert!(bound >= 1 && den_bound >= 1);
    let n = rng.gen_range(1..=bound);
    let d = rng.gen_range(1..=den_bound);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
