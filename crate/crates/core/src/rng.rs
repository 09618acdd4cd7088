use crate::scalar::Real;

/// Deterministic 64-bit mixing generator (splitmix64).
///
/// Chosen over a platform generator so that a seed produces the same stream
/// on every target; output files keyed by `(argv, seed)` are byte-identical
/// across machines. The constants are the standard splitmix64 ones.
#[derive(Debug, Clone)]
pub struct Rng64 {
    state: u64,
}

impl Rng64 {
    pub fn new(seed: u64) -> Self {
        Rng64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1), from the top 53 bits.
    pub fn unit<T: Real>(&mut self) -> T {
        let bits = self.next_u64() >> 11;
        T::from_u64(bits).unwrap() / T::c(9_007_199_254_740_992.0) // 2^53
    }

    /// Uniform in (-1, 1).
    pub fn symmetric<T: Real>(&mut self) -> T {
        T::c(2.0) * self.unit::<T>() - T::one()
    }

    /// Uniform in [lo, hi).
    pub fn range<T: Real>(&mut self, lo: T, hi: T) -> T {
        lo + (hi - lo) * self.unit::<T>()
    }

    /// Uniform integer in [0, n).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_stream_is_stable() {
        // First outputs of splitmix64 seeded with 1234567; frozen so a silent
        // change to the mixing constants cannot slip through.
        let mut r = Rng64::new(1234567);
        assert_eq!(r.next_u64(), 6457827717110365317);
        assert_eq!(r.next_u64(), 3203168211198807973);
    }

    #[test]
    fn unit_stays_in_range() {
        let mut r = Rng64::new(42);
        for _ in 0..1000 {
            let x: f64 = r.unit();
            assert!((0.0..1.0).contains(&x));
            let y: f64 = r.symmetric();
            assert!((-1.0..1.0).contains(&y));
        }
    }
}
