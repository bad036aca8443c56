//! Seeded random Gaussian-rational elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Vector;
use crate::scalar::{Rational, Scalar};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational(rng: &mut SeededRng) -> Rational {
    let num = rng.gen_range(-3i64..=3);
    let den = if rng.gen_bool(0.5) { 1 } else { 2 };
    &Rational::from_integer(num) / &Rational::from_integer(den)
}

/// Real and imaginary parts each drawn from `{k/d : k ∈ [−3, 3], d ∈ {1, 2}}`.
pub fn random_scalar(rng: &mut SeededRng) -> Scalar {
    let re = small_rational(rng);
    let im = small_rational(rng);
    Scalar::new(re, im)
}

pub fn random_vector(rng: &mut SeededRng, dim: usize) -> Vector {
    Vector::new((0..dim).map(|_| random_scalar(rng)).collect())
}
