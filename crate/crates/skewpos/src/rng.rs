//! Seeded deterministic pseudo-random values for sampling and tests.

use num_bigint::BigInt;

use crate::exact::Rat;

/// SplitMix64 generator. Deterministic across platforms.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `1..=bound`.
    pub fn uniform(&mut self, bound: u64) -> u64 {
        1 + self.next_u64() % bound
    }

    /// Positive rational p/q with p, q uniform in `1..=2^16`.
    pub fn rat_positive(&mut self) -> Rat {
        let p = self.uniform(1 << 16);
        let q = self.uniform(1 << 16);
        Rat::new(BigInt::from(p), BigInt::from(q))
    }

    /// Small signed rational with numerator in -9..=9 and denominator in 1..=4.
    pub fn rat_small(&mut self) -> Rat {
        let num = (self.next_u64() % 19) as i64 - 9;
        let den = (self.next_u64() % 4) as i64 + 1;
        Rat::new(BigInt::from(num), BigInt::from(den))
    }

    /// Small nonzero rational, numerator in 1..=9 with random sign.
    pub fn rat_small_nonzero(&mut self) -> Rat {
        let num = (self.next_u64() % 9) as i64 + 1;
        let sign = if self.next_u64() % 2 == 0 { 1 } else { -1 };
        let den = (self.next_u64() % 4) as i64 + 1;
        Rat::new(BigInt::from(sign * num), BigInt::from(den))
    }
}
