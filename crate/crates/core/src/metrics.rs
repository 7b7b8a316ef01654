//! Stego quality: MSE and PSNR against an 8-bit peak.

use std::fmt;

use crate::error::{Error, Result};
use crate::image::GrayImage;

const PEAK_SQUARED: f64 = 255.0 * 255.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QualityReport {
    pub mse: f64,
    /// `f64::INFINITY` when the images are identical.
    pub psnr_db: f64,
}

impl QualityReport {
    pub fn from_mse(mse: f64) -> Self {
        let psnr_db = if mse == 0.0 { f64::INFINITY } else { 10.0 * (PEAK_SQUARED / mse).log10() };
        QualityReport { mse, psnr_db }
    }

    /// PSNR as written to CSV: `inf` for identical images.
    pub fn psnr_text(&self) -> String {
        format_db(self.psnr_db)
    }
}

pub fn format_db(db: f64) -> String {
    if db.is_infinite() {
        "inf".to_string()
    } else {
        format!("{db:.6}")
    }
}

impl fmt::Display for QualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6},{}", self.mse, self.psnr_text())
    }
}

pub fn mse(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    if (a.width(), a.height()) != (b.width(), b.height()) {
        return Err(Error::ShapeMismatch { a: (a.width(), a.height()), b: (b.width(), b.height()) });
    }
    let sum: u64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| u64::from(x.abs_diff(y)).pow(2))
        .sum();
    Ok(sum as f64 / a.len() as f64)
}

pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<QualityReport> {
    Ok(QualityReport::from_mse(mse(a, b)?))
}
