//! Deterministic random rational points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ratio, Rational};

pub const DEFAULT_SEED: u64 = 20_260_401;

/// Seeded generator of rational points with bounded numerators and
/// denominators.
pub struct PointSampler {
    rng: ChaCha8Rng,
    max_den: i64,
    max_num: i64,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed), max_den: 100, max_num: 200 }
    }

    pub fn rational(&mut self) -> Rational {
        let den = self.rng.gen_range(1..=self.max_den);
        let num = self.rng.gen_range(-self.max_num..=self.max_num);
        ratio(num, den)
    }

    /// Nonzero rational.
    pub fn nonzero(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != Rational::from_integer(0.into()) {
                return r;
            }
        }
    }

    pub fn point(&mut self, dim: usize) -> Vec<Rational> {
        (0..dim).map(|_| self.rational()).collect()
    }

    pub fn small_int(&mut self, bound: i64) -> i64 {
        self.rng.gen_range(-bound..=bound)
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }
}
