#![allow(dead_code)]

use std::path::PathBuf;

use fibsteg::GrayImage;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data")
}

pub fn cover_dir() -> PathBuf {
    data_dir().join("covers")
}

pub fn extended_dir() -> PathBuf {
    data_dir().join("extended")
}

/// `(name, image)` for every PGM directly in `dir`, sorted by name.
pub fn load_dir(dir: PathBuf) -> Vec<(String, GrayImage)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "pgm"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, GrayImage::load(&p).unwrap())
        })
        .collect()
}

pub fn covers() -> Vec<(String, GrayImage)> {
    load_dir(cover_dir())
}

/// ln Γ(k/2) from Γ(1) = 1, Γ(1/2) = √π and Γ(x + 1) = x Γ(x).
fn ln_gamma_half(k: u32) -> f64 {
    let (mut x, mut acc) = if k.is_multiple_of(2) { (1.0, 0.0) } else { (0.5, 0.5 * std::f64::consts::PI.ln()) };
    while x < f64::from(k) / 2.0 {
        acc += x.ln();
        x += 1.0;
    }
    acc
}

/// Chi-square CDF by direct quadrature of the density. Substituting
/// `t = u²` removes the singularity at 0 for one degree of freedom:
/// `F(x) = ∫₀^√x 2 u^(k-1) e^(-u²/2) du / (2^(k/2) Γ(k/2))`.
pub fn chi2_cdf_quadrature(x: f64, k: u32) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let ln_norm = f64::from(k) / 2.0 * 2f64.ln() + ln_gamma_half(k) - 2f64.ln();
    let density = |u: f64| {
        if u == 0.0 {
            return if k == 1 { (-ln_norm).exp() } else { 0.0 };
        }
        (f64::from(k - 1) * u.ln() - u * u / 2.0 - ln_norm).exp()
    };
    // Composite Simpson's rule.
    let b = x.sqrt();
    let n = 20_000usize;
    let h = b / n as f64;
    let mut sum = density(0.0) + density(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * density(i as f64 * h);
    }
    sum * h / 3.0
}
