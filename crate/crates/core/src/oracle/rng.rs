//! Reproducible random stream.
//!
//! The generator is xorshift64* seeded through one splitmix64 step:
//!
//! ```text
//! seed:    z = seed + 0x9E3779B97F4A7C15
//!          z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!          z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!          state = z ^ (z >> 31)            (0 is replaced by 0x9E3779B97F4A7C15)
//! step:    x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27
//!          output = x * 0x2545F4914F6CDD1D
//! uniform: ((output >> 11) + 0.5) * 2^-53   ∈ (0, 1)
//! ```
//!
//! All products are wrapping 64-bit.

#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Rng {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        Rng { state: if z == 0 { 0x9E37_79B9_7F4A_7C15 } else { z } }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform on the open interval (0, 1).
    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard exponential variate.
    pub fn exponential(&mut self) -> f64 {
        -self.uniform().ln()
    }
}
