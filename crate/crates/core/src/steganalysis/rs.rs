//! Regular/singular group analysis of binary LSB flipping.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Binary LSB flip: `0 <-> 1, 2 <-> 3, ..., 254 <-> 255`.
pub fn flip_f1(x: u8) -> u8 {
    x ^ 1
}

/// Shifted flip: `-1 <-> 0, 1 <-> 2, ..., 255 <-> 256`. Results may leave
/// the 8-bit range and only feed the smoothness measure.
pub fn flip_fneg1(x: u8) -> i16 {
    let x = i16::from(x);
    if x % 2 == 1 {
        x + 1
    } else {
        x - 1
    }
}

/// Group geometry and flip mask. The mask is tiled across the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsParams {
    pub group_size: usize,
    pub mask: Vec<bool>,
}

impl Default for RsParams {
    fn default() -> Self {
        RsParams { group_size: 4, mask: vec![false, true, true, false] }
    }
}

impl RsParams {
    pub fn new(group_size: usize, mask: Vec<bool>) -> Result<Self> {
        if mask.is_empty() || group_size == 0 || !group_size.is_multiple_of(mask.len()) {
            return Err(Error::InvalidArgument(format!(
                "mask of length {} must divide group size {group_size}",
                mask.len()
            )));
        }
        Ok(RsParams { group_size, mask })
    }

    fn flipped(&self, i: usize) -> bool {
        self.mask[i % self.mask.len()]
    }
}

/// Percentages of regular and singular groups under the positive and
/// negative masks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RsReport {
    pub rm: f64,
    pub sm: f64,
    pub rm_neg: f64,
    pub sm_neg: f64,
    pub groups_total: usize,
}

impl RsReport {
    /// Percentage of groups unusable under the positive mask.
    pub fn unusable(&self) -> f64 {
        100.0 - self.rm - self.sm
    }

    pub fn unusable_neg(&self) -> f64 {
        100.0 - self.rm_neg - self.sm_neg
    }
}

fn smoothness(values: impl Iterator<Item = i16>) -> u32 {
    let mut prev: Option<i16> = None;
    let mut total = 0u32;
    for v in values {
        if let Some(p) = prev {
            total += u32::from(v.abs_diff(p));
        }
        prev = Some(v);
    }
    total
}

#[derive(Default)]
struct Tally {
    regular: usize,
    singular: usize,
}

impl Tally {
    fn add(&mut self, before: u32, after: u32) {
        match after.cmp(&before) {
            std::cmp::Ordering::Greater => self.regular += 1,
            std::cmp::Ordering::Less => self.singular += 1,
            std::cmp::Ordering::Equal => {}
        }
    }
}

/// Tiles every row into non-overlapping horizontal groups (a trailing partial
/// group is dropped) and classifies each by how the smoothness
/// `sum |x[i+1] - x[i]|` changes under the masked flip.
pub fn rs_analyze(img: &GrayImage, params: &RsParams) -> Result<RsReport> {
    let g = params.group_size;
    if params.mask.is_empty() || g == 0 || !g.is_multiple_of(params.mask.len()) {
        return Err(Error::InvalidArgument("mask length must divide the group size".into()));
    }
    if img.width() < g {
        return Err(Error::InsufficientData(format!(
            "image width {} is narrower than the group size {g}",
            img.width()
        )));
    }

    let mut pos = Tally::default();
    let mut neg = Tally::default();
    let mut total = 0usize;
    for row in img.rows() {
        for group in row.chunks_exact(g) {
            let base = smoothness(group.iter().map(|&v| i16::from(v)));
            let f1 = smoothness(group.iter().enumerate().map(|(i, &v)| {
                i16::from(if params.flipped(i) { flip_f1(v) } else { v })
            }));
            let fneg = smoothness(
                group
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| if params.flipped(i) { flip_fneg1(v) } else { i16::from(v) }),
            );
            pos.add(base, f1);
            neg.add(base, fneg);
            total += 1;
        }
    }

    let pct = |n: usize| 100.0 * n as f64 / total as f64;
    Ok(RsReport {
        rm: pct(pos.regular),
        sm: pct(pos.singular),
        rm_neg: pct(neg.regular),
        sm_neg: pct(neg.singular),
        groups_total: total,
    })
}
