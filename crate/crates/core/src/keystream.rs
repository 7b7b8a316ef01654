//! Seeded xorshift64* stream used for pixel permutations and synthetic messages.
//!
//! The generator is fixed so stego files and benchmark outputs reproduce
//! bit-for-bit on every platform. It is not a cryptographic generator.

/// Multiplier applied to the xorshift state to form each output.
pub const MULTIPLIER: u64 = 2_685_821_657_736_338_717;

/// State used in place of a zero seed (xorshift has a fixed point at zero).
pub const ZERO_SEED_REMAP: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyStream {
    seed: u64,
    state: u64,
}

impl KeyStream {
    pub fn new(seed: u64) -> Self {
        let state = if seed == 0 { ZERO_SEED_REMAP } else { seed };
        KeyStream { seed, state }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut s = self.state;
        s ^= s >> 12;
        s ^= s << 25;
        s ^= s >> 27;
        self.state = s;
        s.wrapping_mul(MULTIPLIER)
    }

    /// Fisher-Yates shuffle of `0..n`. Index `i` swaps with `next_u64() % (i + 1)`,
    /// walking `i` from `n - 1` down to 1. The modulo bias is below `n / 2^64`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = (self.next_u64() % (i as u64 + 1)) as usize;
            order.swap(i, j);
        }
        order
    }

    /// `n` bits, each the least significant bit of a fresh draw.
    pub fn message_bits(&mut self, n: usize) -> Vec<u8> {
        (0..n).map(|_| (self.next_u64() & 1) as u8).collect()
    }
}

impl Iterator for KeyStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        Some(self.next_u64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_one_first_output() {
        // s = 1: s ^= s >> 12 -> 1; s ^= s << 25 -> 2^25 + 1; s ^= s >> 27 -> unchanged.
        let s: u64 = (1 << 25) + 1;
        let expected = s.wrapping_mul(MULTIPLIER);
        assert_eq!(expected, 5_180_492_295_206_395_165);
        assert_eq!(KeyStream::new(1).next_u64(), expected);
    }

    #[test]
    fn same_seed_same_stream() {
        let a: Vec<u64> = KeyStream::new(99).take(1000).collect();
        let b: Vec<u64> = KeyStream::new(99).take(1000).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_seed_is_remapped() {
        let mut zero = KeyStream::new(0);
        let mut remap = KeyStream::new(ZERO_SEED_REMAP);
        assert_eq!(zero.seed(), 0);
        for _ in 0..100 {
            let v = zero.next_u64();
            assert_ne!(v, 0);
            assert_eq!(v, remap.next_u64());
        }
    }

    #[test]
    fn small_permutations() {
        assert!(KeyStream::new(3).permutation(0).is_empty());
        assert_eq!(KeyStream::new(3).permutation(1), vec![0]);
        let mut p = KeyStream::new(42).permutation(5);
        p.sort_unstable();
        assert_eq!(p, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn permutation_follows_documented_shuffle() {
        let mut draws = KeyStream::new(42);
        let mut expected = vec![0, 1, 2, 3, 4];
        for i in (1..5usize).rev() {
            let j = (draws.next_u64() % (i as u64 + 1)) as usize;
            expected.swap(i, j);
        }
        assert_eq!(KeyStream::new(42).permutation(5), expected);
    }

    #[test]
    fn message_bits_are_output_lsbs() {
        assert!(KeyStream::new(5).message_bits(0).is_empty());
        let expected: Vec<u8> = KeyStream::new(5).take(8).map(|v| (v & 1) as u8).collect();
        assert_eq!(KeyStream::new(5).message_bits(8), expected);
    }

    #[test]
    fn message_bits_are_balanced() {
        let bits = KeyStream::new(2024).message_bits(1_000_000);
        let mean = bits.iter().map(|&b| f64::from(b)).sum::<f64>() / bits.len() as f64;
        assert!((0.49..=0.51).contains(&mean), "mean {mean}");
    }

    #[test]
    fn distinct_seeds_diverge_quickly() {
        let mut same = 0;
        for seed in 1..=1000u64 {
            let a: Vec<u64> = KeyStream::new(seed).take(4).collect();
            let b: Vec<u64> = KeyStream::new(seed + 1000).take(4).collect();
            if a == b {
                same += 1;
            }
        }
        assert_eq!(same, 0);
    }
}
