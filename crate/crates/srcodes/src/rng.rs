//! Deterministic random numbers.
//!
//! This is SplitMix64 (Steele, Lea, Flood 2014): the state advances by the
//! golden-gamma constant and each output is a finalizer of the state. It is
//! written out here, rather than pulled from a crate, so that simulation
//! results are reproducible from the seed alone in any implementation:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! output = z ^ (z >> 31)
//! ```
//!
//! Per-trial streams are derived by counter: trial i of a run seeded with s
//! uses `SplitMix64::new(s).fork(i)`; see [`SplitMix64::fork`].

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    /// An independent stream for sub-task `index`: seeded with the output
    /// of a fresh generator at `seed ^ (index + 1)`. Deterministic and
    /// collision-free enough for per-trial streams.
    pub fn fork(&self, index: u64) -> SplitMix64 {
        let mut base = SplitMix64::new(self.state ^ (index.wrapping_add(1)));
        SplitMix64 { state: base.next_u64() }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..n` (unbiased, by rejection).
    pub fn next_below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// Uniform value in `0..n` as usize.
    pub fn index(&mut self, n: usize) -> usize {
        self.next_below(n as u64) as usize
    }

    /// Uniform f64 in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
