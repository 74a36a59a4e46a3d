//! Small deterministic generator used for randomized checks and noise synthesis.
//!
//! The generator is SplitMix64 (Steele, Lea, Flood 2014): a 64-bit counter
//! advanced by the golden-gamma constant and finalized with a variant of the
//! MurmurHash3 mixer. It is seedable, has exactly 64 bits of state, and is
//! reproducible across platforms, which is what the experiment harness needs.

use num_complex::Complex64;
// f64 math comes from num-traits (libm) when no std is in the crate graph;
// builds that do link std resolve the methods inherently instead.
#[allow(unused_imports)]
use num_traits::Float;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in `[0, n)`.
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_f64() * n as f64) as usize % n.max(1)
    }

    /// Standard normal via the Box-Muller transform.
    pub fn normal(&mut self) -> f64 {
        let u1 = loop {
            let u = self.next_f64();
            if u > 0.0 {
                break u;
            }
        };
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (core::f64::consts::TAU * u2).cos()
    }

    /// Complex number with uniform argument and the given modulus.
    pub fn on_circle(&mut self, radius: f64) -> Complex64 {
        let theta = core::f64::consts::TAU * self.next_f64();
        Complex64::from_polar(radius, theta)
    }

    /// Complex number with modulus uniform in `[lo, hi)` and uniform argument.
    pub fn in_annulus(&mut self, lo: f64, hi: f64) -> Complex64 {
        let r = self.uniform(lo, hi);
        self.on_circle(r)
    }

    /// Complex standard normal (independent real and imaginary parts).
    pub fn complex_normal(&mut self) -> Complex64 {
        Complex64::new(self.normal(), self.normal())
    }
}
