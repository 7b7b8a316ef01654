//! Embedding-ratio estimation from difference-image histograms.
//!
//! Horizontal neighbour pairs `(u, v)` have difference `d = v - u`. Zeroing
//! both LSBs puts every pair in an even class `c = 2(v/2 - u/2)`, and `d` is
//! `c - 1`, `c` or `c + 1` depending on the two LSBs. Random LSB replacement
//! at ratio `p` flips each LSB with probability `p/2` and never moves a pair
//! between classes, so the class histogram `f` is invariant while the
//! difference histogram `h` drifts in a way that is quadratic in `p`.
//!
//! An odd difference is "outer" when `|d| > |c|` and "inner" otherwise. In
//! natural images every odd magnitude is equally likely to come from either
//! side, so `outer = inner`. Class 0 only holds outer pairs. Writing
//! `Δ = outer − inner` over the nonzero classes and `L0` for the odd pairs
//! of class 0, the stego counts satisfy
//!
//! ```text
//! (f0 / 2) p² − (Δ + f0) p + (Δ + L0) = 0
//! ```
//!
//! which vanishes at `p = 0` on a cover and at `p = 1` on a fully random LSB
//! plane. `L0 = f0 − h[0]`, and `Δ` follows from the histograms of the image
//! and of its LSB-flipped copy `g`: `h[2i+1] − g[2i+1] = E(i) − E(i+1)` where
//! `E(i)` is the outward-minus-inward excess of class `2i`.

use super::rs::flip_f1;
use crate::error::{Error, Result};
use crate::image::GrayImage;

const OFFSET: i32 = 255;
const BINS: usize = 511;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DihEstimate {
    /// Estimated fraction of pixels carrying message bits.
    pub ratio: f64,
}

/// Histograms of horizontal differences, indexed by `d + 255`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceHistograms {
    /// Test image.
    pub h: Vec<u64>,
    /// Image with every LSB flipped.
    pub g: Vec<u64>,
    /// Image with every LSB cleared (even bins only).
    pub f: Vec<u64>,
}

impl DifferenceHistograms {
    pub fn new(img: &GrayImage) -> Self {
        let mut h = vec![0u64; BINS];
        let mut g = vec![0u64; BINS];
        let mut f = vec![0u64; BINS];
        for row in img.rows() {
            for w in row.windows(2) {
                let (u, v) = (i32::from(w[0]), i32::from(w[1]));
                h[(v - u + OFFSET) as usize] += 1;
                g[(i32::from(flip_f1(w[1])) - i32::from(flip_f1(w[0])) + OFFSET) as usize] += 1;
                f[((v & !1) - (u & !1) + OFFSET) as usize] += 1;
            }
        }
        DifferenceHistograms { h, g, f }
    }

    fn at(hist: &[u64], d: i32) -> i64 {
        let idx = d + OFFSET;
        if (0..BINS as i32).contains(&idx) {
            hist[idx as usize] as i64
        } else {
            0
        }
    }

    pub fn pairs(&self) -> u64 {
        self.h.iter().sum()
    }

    /// Pairs in class 0.
    pub fn class_zero(&self) -> i64 {
        Self::at(&self.f, 0)
    }

    /// Odd-difference pairs in class 0.
    pub fn class_zero_odd(&self) -> i64 {
        self.class_zero() - Self::at(&self.h, 0)
    }

    /// Outer minus inner odd pairs over the nonzero classes.
    pub fn outer_minus_inner(&self) -> i64 {
        // D(j) = h[2j+1] - g[2j+1] = E(j) - E(j+1); E vanishes outside the class range.
        let d = |j: i32| Self::at(&self.h, 2 * j + 1) - Self::at(&self.g, 2 * j + 1);
        let upper: i64 = (1..=127).map(|j| i64::from(j) * d(j)).sum();
        let lower: i64 = (-128..=-2).map(|j| i64::from(1 + j) * d(j)).sum();
        upper - lower
    }
}

/// Smaller admissible root of the ratio equation, given the class-0 size
/// `f0`, its odd count `l0`, and the outer-minus-inner excess `delta`.
pub fn solve_ratio(f0: f64, l0: f64, delta: f64) -> Result<f64> {
    let a = f0 / 2.0;
    let b = -(delta + f0);
    let c = delta + l0;
    if a == 0.0 {
        if b == 0.0 {
            return Err(Error::EstimateUndefined("no class-0 pairs and no odd-difference imbalance".into()));
        }
        return Ok(-c / b);
    }
    let disc = b * b - 4.0 * a * c;
    if disc <= 0.0 {
        // Double root (or sampling noise pushing it complex): take the vertex.
        return Ok(-b / (2.0 * a));
    }
    let sq = disc.sqrt();
    // (-b - sq) / 2a, rewritten through the root product when -b > 0.
    if b < 0.0 {
        Ok(2.0 * c / (-b + sq))
    } else {
        Ok((-b - sq) / (2.0 * a))
    }
}

pub fn dih_estimate(img: &GrayImage) -> Result<DihEstimate> {
    if img.width() < 2 {
        return Err(Error::InsufficientData("difference image needs at least two columns".into()));
    }
    let hist = DifferenceHistograms::new(img);
    if hist.h.iter().filter(|&&c| c > 0).count() < 2 {
        return Err(Error::EstimateUndefined("all differences fall in a single bin".into()));
    }
    let ratio = solve_ratio(
        hist.class_zero() as f64,
        hist.class_zero_odd() as f64,
        hist.outer_minus_inner() as f64,
    )?;
    Ok(DihEstimate { ratio })
}
