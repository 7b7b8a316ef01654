//! 12-plane Zeckendorf (canonical Fibonacci) codewords for 8-bit pixel values.
//!
//! Plane `k` (1-based, counted from the least significant plane) carries
//! weight `F(k)` from [`FIB_WEIGHTS`]. Text forms print the most significant
//! plane first, so `255` renders as `100001000001`.

use std::fmt;

use crate::error::{Error, Result};

/// Number of Fibonacci planes needed to cover the 8-bit pixel range.
pub const PLANES: usize = 12;

/// Plane weights, least significant first.
pub const FIB_WEIGHTS: [u16; PLANES] = [1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233];

/// Largest value expressible by a valid 12-plane codeword (`233+89+34+13+5+2`).
pub const MAX_VALUE: u16 = 376;

const PLANE_MASK: u16 = (1 << PLANES) - 1;

/// A 12-bit Fibonacci codeword. Bit `k - 1` of the inner word is plane `k`.
///
/// Any 12-bit pattern can be held; [`FibCodeword::is_valid`] reports whether
/// it satisfies the no-adjacent-ones rule.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FibCodeword(u16);

impl FibCodeword {
    pub const EMPTY: FibCodeword = FibCodeword(0);

    /// Builds a codeword from its raw plane bits (plane 1 in bit 0).
    pub fn from_bits(bits: u16) -> Result<Self> {
        if bits & !PLANE_MASK != 0 {
            return Err(Error::InvalidArgument(format!(
                "codeword {bits:#x} uses planes beyond {PLANES}"
            )));
        }
        Ok(FibCodeword(bits))
    }

    /// Builds a codeword with the given 1-based planes set.
    pub fn from_planes(planes: &[usize]) -> Result<Self> {
        let mut code = FibCodeword::EMPTY;
        for &k in planes {
            if !(1..=PLANES).contains(&k) {
                return Err(Error::InvalidArgument(format!("plane {k} outside 1..={PLANES}")));
            }
            code = code.with_plane(k, true);
        }
        Ok(code)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// State of plane `k` (1-based). Panics if `k` is outside `1..=12`.
    pub fn plane(self, k: usize) -> bool {
        assert!((1..=PLANES).contains(&k), "plane {k} outside 1..={PLANES}");
        self.0 >> (k - 1) & 1 == 1
    }

    #[must_use]
    pub fn with_plane(self, k: usize, set: bool) -> Self {
        assert!((1..=PLANES).contains(&k), "plane {k} outside 1..={PLANES}");
        let bit = 1 << (k - 1);
        FibCodeword(if set { self.0 | bit } else { self.0 & !bit })
    }

    /// Planes 3, 2, 1 packed as `b3 b2 b1`.
    pub fn low3(self) -> u8 {
        (self.0 & 0b111) as u8
    }

    #[must_use]
    pub fn with_low3(self, pattern: u8) -> Self {
        FibCodeword((self.0 & !0b111) | u16::from(pattern & 0b111))
    }

    /// Set planes in ascending order.
    pub fn planes(self) -> impl Iterator<Item = usize> {
        (1..=PLANES).filter(move |&k| self.plane(k))
    }

    pub fn is_valid(self) -> bool {
        self.0 & (self.0 >> 1) == 0
    }

    pub fn value(self) -> u16 {
        FIB_WEIGHTS
            .iter()
            .enumerate()
            .filter(|(i, _)| self.0 >> i & 1 == 1)
            .map(|(_, w)| w)
            .sum()
    }
}

impl fmt::Display for FibCodeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in (1..=PLANES).rev() {
            f.write_str(if self.plane(k) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

const fn greedy(mut value: u16) -> u16 {
    let mut bits = 0u16;
    let mut i = PLANES;
    while i > 0 {
        i -= 1;
        if FIB_WEIGHTS[i] <= value {
            value -= FIB_WEIGHTS[i];
            bits |= 1 << i;
        }
    }
    bits
}

const fn build_table() -> [u16; MAX_VALUE as usize + 1] {
    let mut table = [0u16; MAX_VALUE as usize + 1];
    let mut v = 0;
    while v <= MAX_VALUE as usize {
        table[v] = greedy(v as u16);
        v += 1;
    }
    table
}

static ENCODE_TABLE: [u16; MAX_VALUE as usize + 1] = build_table();

/// Zeckendorf codeword of `value` (greedy, largest weight first).
pub fn encode(value: u16) -> Result<FibCodeword> {
    ENCODE_TABLE
        .get(usize::from(value))
        .map(|&bits| FibCodeword(bits))
        .ok_or(Error::ValueOutOfRange(u32::from(value)))
}

/// Infallible encode for pixel values.
pub fn encode_pixel(value: u8) -> FibCodeword {
    FibCodeword(ENCODE_TABLE[usize::from(value)])
}

/// Weighted sum of the set planes; defined for invalid patterns too.
pub fn decode(code: FibCodeword) -> u16 {
    code.value()
}

pub fn is_valid(code: FibCodeword) -> bool {
    code.is_valid()
}
