//! Pairs-of-values chi-square attack over a cumulative row-major scan.

use super::chi2::chi_square_sf;
use crate::error::{Error, Result};
use crate::image::GrayImage;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PovPoint {
    /// Fraction of the image scanned, in `(0, 1]`.
    pub fraction: f64,
    /// Probability of embedding; 0 when fewer than two pairs are populated.
    pub p_value: f64,
    pub chi_square: f64,
    /// Populated pairs used in the test.
    pub pairs: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PovCurve {
    pub points: Vec<PovPoint>,
}

/// Chi-square statistic and populated pair count for a 256-bin histogram.
/// Pairs with no mass are skipped; the expected count of bin `2i` is the
/// pair mean.
pub fn pov_statistic(hist: &[u64; 256]) -> (f64, usize) {
    let mut chi = 0.0;
    let mut kept = 0;
    for pair in hist.chunks_exact(2) {
        let total = pair[0] + pair[1];
        if total == 0 {
            continue;
        }
        let expected = total as f64 / 2.0;
        let d = pair[0] as f64 - expected;
        chi += d * d / expected;
        kept += 1;
    }
    (chi, kept)
}

/// p-value for one histogram, or 0 with fewer than two populated pairs.
pub fn pov_p_value(hist: &[u64; 256]) -> (f64, f64, usize) {
    let (chi, kept) = pov_statistic(hist);
    if kept < 2 {
        return (0.0, chi, kept);
    }
    (chi_square_sf(chi, (kept - 1) as u32), chi, kept)
}

/// Evaluates the test over the first `ceil(t N)` pixels for `t = step,
/// 2 step, ...` up to 1.
pub fn pov_analyze(img: &GrayImage, step: f64) -> Result<PovCurve> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::InvalidArgument(format!("POV step {step} outside (0, 1]")));
    }
    let px = img.pixels();
    let n = px.len();
    let count = (1.0 / step).ceil() as usize;
    let mut hist = [0u64; 256];
    let mut consumed = 0usize;
    let mut points = Vec::with_capacity(count);
    for k in 1..=count {
        let fraction = if k == count { 1.0 } else { (k as f64 * step).min(1.0) };
        let upto = ((fraction * n as f64).ceil() as usize).min(n);
        for &v in &px[consumed..upto.max(consumed)] {
            hist[usize::from(v)] += 1;
        }
        consumed = consumed.max(upto);
        let (p_value, chi_square, pairs) = pov_p_value(&hist);
        points.push(PovPoint { fraction, p_value, chi_square, pairs });
    }
    Ok(PovCurve { points })
}
