//! Portable pseudorandom numbers for the generators.
//!
//! The stream is SplitMix64 (Steele, Lea and Flood), chosen because it is a
//! few lines in any language and fully determined by a 64-bit seed:
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15          (wrapping)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9    (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB    (wrapping)
//! return z ^ (z >> 31)
//! ```
//!
//! Derived draws, in terms of `next()`:
//!
//! * `below(n)`: with `t = 2^64 mod n`, draw until `r >= t`, return `r mod n`.
//! * `unit()`: `(next() >> 11) * 2^-53`, a double in `[0, 1)`.
//! * `chance(p)`: `unit() < p`.
//! * `shuffle(v)`: Fisher-Yates from the back, `j = below(i + 1)` for
//!   `i = len-1 down to 1`.
//!
//! Nothing here uses platform-dependent floating-point functions, so generated
//! families are bit-identical everywhere.

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        let threshold = n.wrapping_neg() % n;
        loop {
            let r = self.next_u64();
            if r >= threshold {
                return r % n;
            }
        }
    }

    pub fn below_usize(&mut self, n: usize) -> usize {
        self.below(n as u64) as usize
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    pub fn shuffle<T>(&mut self, v: &mut [T]) {
        for i in (1..v.len()).rev() {
            let j = self.below_usize(i + 1);
            v.swap(i, j);
        }
    }
}
