//! Seeded random states for tests and benchmarks.
//!
//! The generator is pinned to a specific 64-bit linear congruential recurrence
//! so that a given seed produces the same stream on any platform or
//! implementation:
//!
//! ```text
//! state <- state * 6364136223846793005 + 1442695040888963407   (mod 2^64)
//! ```
//!
//! (Knuth's MMIX constants.) Draws use the high bits, which are the strong
//! ones for an LCG.

use crate::exact::{BigRational, GaussianRational, Matrix};
use crate::state::{BipartiteState, ParamKind, ParamPoly};

const LCG_MULTIPLIER: u64 = 6364136223846793005;
const LCG_INCREMENT: u64 = 1442695040888963407;

/// Deterministic 64-bit linear congruential generator.
#[derive(Clone, Debug)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(LCG_MULTIPLIER)
            .wrapping_add(LCG_INCREMENT);
        self.state
    }

    pub fn next_bool(&mut self) -> bool {
        (self.next_u64() >> 63) == 1
    }

    /// Uniform value in `[1, 2^bits)`, i.e. a nonzero `bits`-bit integer.
    pub fn next_nonzero_bits(&mut self, bits: u32) -> u64 {
        assert!((1..=63).contains(&bits), "bits must be in 1..=63");
        let span = (1u64 << bits) - 1;
        (self.next_u64() >> (64 - bits)) % span + 1
    }
}

/// A signed ratio of uniform nonzero `bits`-bit integers.
pub fn random_rational(rng: &mut Lcg64, bits: u32) -> BigRational {
    let num = rng.next_nonzero_bits(bits);
    let den = rng.next_nonzero_bits(bits);
    let sign: i64 = if rng.next_bool() { -1 } else { 1 };
    BigRational::new((sign * num as i64).into(), den.into())
}

/// A Gaussian rational with independently drawn real and imaginary parts.
pub fn random_gaussian(rng: &mut Lcg64, bits: u32) -> GaussianRational {
    let re = random_rational(rng, bits);
    let im = random_rational(rng, bits);
    GaussianRational::new(re, im)
}

/// A dense random state: every amplitude is a nonzero Gaussian rational with
/// numerators and denominators up to `bits` bits. Entries are drawn
/// row-major, real part before imaginary part.
pub fn random_state(rng: &mut Lcg64, d_a: usize, d_b: usize, bits: u32) -> BipartiteState {
    let coeffs = Matrix::from_fn(d_a, d_b, |_, _| {
        ParamPoly::constant(random_gaussian(rng, bits))
    });
    BipartiteState::new(coeffs, ParamKind::None).expect("dense random state is nonzero")
}
