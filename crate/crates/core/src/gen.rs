//! Seeded random instances for tests, benchmarks and the self-test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;
use crate::sequence::{Point, PointSequence};

/// Deterministic instance generator.
#[derive(Clone, Debug)]
pub struct InstanceGen {
    rng: ChaCha8Rng,
}

impl InstanceGen {
    pub fn new(seed: u64) -> Self {
        InstanceGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// `len` points of dimension `dim` with integer coordinates in `lo..=hi`.
    pub fn sequence<S: Scalar>(
        &mut self,
        label: &str,
        len: usize,
        dim: usize,
        lo: i64,
        hi: i64,
    ) -> PointSequence<S> {
        let points = (0..len)
            .map(|_| {
                Point::new(
                    (0..dim)
                        .map(|_| S::from_i64(self.rng.gen_range(lo..=hi)))
                        .collect(),
                )
            })
            .collect();
        PointSequence::new(label, points).expect("generated points are well formed")
    }

    /// A pair of sequences with lengths drawn from `1..=max_len`.
    pub fn pair<S: Scalar>(
        &mut self,
        max_len: usize,
        dim: usize,
        lo: i64,
        hi: i64,
    ) -> (PointSequence<S>, PointSequence<S>) {
        let n = self.rng.gen_range(1..=max_len);
        let m = self.rng.gen_range(1..=max_len);
        (
            self.sequence("A", n, dim, lo, hi),
            self.sequence("B", m, dim, lo, hi),
        )
    }
}
