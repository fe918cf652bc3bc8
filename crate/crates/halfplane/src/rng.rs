//! Deterministic 64-bit generator for randomized spot-checks.
//!
//! SplitMix64 with the standard constants: the state advances by
//! 0x9E3779B97F4A7C15 and the output is finalized with the two xor-shift
//! multiplies (0xBF58476D1CE4E5B9, 0x94D049BB133111EB). Identical seeds give
//! identical streams on every platform, so `verify` output is reproducible
//! up to floating-point conformance.

use crate::domain::Point;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Log-uniform in [lo, hi], lo > 0.
    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        (self.uniform(lo.ln(), hi.ln())).exp()
    }

    /// A sample point with x uniform in [-10, 10] and height log-uniform in
    /// [0.05, 20]: moderate heights keep the Cauchy circles well inside the
    /// half-plane and away from cancellation.
    pub fn sample_point(&mut self) -> Point {
        let x = self.uniform(-10.0, 10.0);
        let y = self.log_uniform(0.05, 20.0);
        Point::new(x, y).expect("sampled height is positive")
    }

    pub fn sample_points(&mut self, count: usize) -> Vec<Point> {
        (0..count).map(|_| self.sample_point()).collect()
    }
}
