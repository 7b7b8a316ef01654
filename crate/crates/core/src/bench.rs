//! Benchmark harness: embeds keyed synthetic messages into every cover at
//! every configured rate, then writes quality, capacity and detector results
//! as CSV.

use std::cmp::Ordering;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::embed::{embed, rate_bits, EmbedJob, Method, Scheme};
use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::metrics::{format_db, psnr, QualityReport};
use crate::steganalysis::{dih_estimate, pov_analyze, rs_analyze, PovCurve, RsParams, RsReport, DEFAULT_POV_STEP};

const BASELINE_RATES: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const MAPPED_EXTRA_RATES: [f64; 2] = [1.5, 2.0];

/// Rates exercised for `method` when none are configured. Rate 0 is the
/// unmodified cover.
pub fn default_rates(method: Method) -> Vec<f64> {
    let mut rates = BASELINE_RATES.to_vec();
    if method == Method::ProposedMapped {
        rates.extend(MAPPED_EXTRA_RATES);
    }
    rates
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub cover_dir: PathBuf,
    pub out_dir: PathBuf,
    pub seed: u64,
    pub methods: Vec<Method>,
    /// Explicit rates; each method keeps those within its bound. `None`
    /// selects [`default_rates`].
    pub rates: Option<Vec<f64>>,
    pub pov_step: f64,
    /// Also write every stego image under `out_dir/stego/`.
    pub save_stegos: bool,
}

impl BenchConfig {
    pub fn new(cover_dir: impl Into<PathBuf>, out_dir: impl Into<PathBuf>, seed: u64) -> Self {
        BenchConfig {
            cover_dir: cover_dir.into(),
            out_dir: out_dir.into(),
            seed,
            methods: Method::ALL.to_vec(),
            rates: None,
            pov_step: DEFAULT_POV_STEP,
            save_stegos: false,
        }
    }

    pub fn rates_for(&self, method: Method) -> Vec<f64> {
        match &self.rates {
            None => default_rates(method),
            Some(rates) => rates.iter().copied().filter(|&r| r <= method.max_rate()).collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::Config("no methods selected".into()));
        }
        if let Some(rates) = &self.rates {
            if let Some(bad) = rates.iter().find(|r| !r.is_finite() || **r < 0.0) {
                return Err(Error::Config(format!("invalid rate {bad}")));
            }
        }
        if !(self.pov_step > 0.0 && self.pov_step <= 1.0) {
            return Err(Error::Config(format!("POV step {} outside (0, 1]", self.pov_step)));
        }
        Ok(())
    }
}

/// Everything measured for one (method, rate, cover) cell.
#[derive(Clone, Debug)]
pub struct CellResult {
    pub method: Method,
    pub rate: f64,
    pub cover: String,
    pub requested_bits: usize,
    pub embedded_bits: usize,
    pub capacity_bits: usize,
    pub quality: QualityReport,
    pub rs: RsReport,
    /// `Err` carries the reason the estimate is undefined.
    pub dih: std::result::Result<f64, String>,
    pub pov: PovCurve,
}

#[derive(Clone, Debug, Default)]
pub struct BenchSummary {
    pub covers: Vec<String>,
    /// `(cover file, error)` for covers that could not be processed.
    pub failures: Vec<(String, String)>,
    pub cells: Vec<CellResult>,
    pub files: Vec<PathBuf>,
}

fn list_covers(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut covers: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e.eq_ignore_ascii_case("pgm")))
        .collect();
    covers.sort();
    if covers.is_empty() {
        return Err(Error::Config(format!("no .pgm covers in {}", dir.display())));
    }
    Ok(covers)
}

fn cover_name(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

pub fn rate_label(rate: f64) -> String {
    format!("{rate:.2}")
}

fn analyze_cover(cfg: &BenchConfig, name: &str, cover: &GrayImage) -> Result<Vec<CellResult>> {
    let rs_params = RsParams::default();
    let mut cells = Vec::new();
    for &method in &cfg.methods {
        let scheme = Scheme::new(method, cfg.seed);
        let capacity_bits = scheme.capacity(cover);
        for rate in cfg.rates_for(method) {
            let out = embed(cover, &EmbedJob::rate(scheme.clone(), rate))?;
            if cfg.save_stegos {
                let dir = cfg.out_dir.join("stego");
                out.stego.save(dir.join(format!("{method}_{}_{name}.pgm", rate_label(rate))))?;
            }
            cells.push(CellResult {
                method,
                rate,
                cover: name.to_string(),
                requested_bits: rate_bits(rate, cover.len()),
                embedded_bits: out.bits_embedded,
                capacity_bits,
                quality: psnr(cover, &out.stego)?,
                rs: rs_analyze(&out.stego, &rs_params)?,
                dih: dih_estimate(&out.stego).map(|d| d.ratio).map_err(|e| e.to_string()),
                pov: pov_analyze(&out.stego, cfg.pov_step)?,
            });
        }
    }
    Ok(cells)
}

fn cell_order(a: &CellResult, b: &CellResult) -> Ordering {
    a.method
        .cmp(&b.method)
        .then(a.rate.total_cmp(&b.rate))
        .then_with(|| a.cover.cmp(&b.cover))
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchSummary> {
    cfg.validate()?;
    let paths = list_covers(&cfg.cover_dir)?;
    fs::create_dir_all(&cfg.out_dir)?;
    if cfg.save_stegos {
        fs::create_dir_all(cfg.out_dir.join("stego"))?;
    }

    let outcomes: Vec<(String, std::result::Result<Vec<CellResult>, String>)> = paths
        .par_iter()
        .map(|path| {
            let name = cover_name(path);
            let result = GrayImage::load(path)
                .and_then(|cover| analyze_cover(cfg, &name, &cover))
                .map_err(|e| e.to_string());
            (name, result)
        })
        .collect();

    let mut summary = BenchSummary::default();
    for ((name, result), path) in outcomes.into_iter().zip(&paths) {
        match result {
            Ok(cells) => {
                summary.covers.push(name);
                summary.cells.extend(cells);
            }
            Err(e) => summary.failures.push((path.display().to_string(), e)),
        }
    }
    summary.cells.sort_by(cell_order);
    summary.files = write_reports(cfg, &summary)?;
    Ok(summary)
}

fn groups(cells: &[CellResult]) -> Vec<&[CellResult]> {
    cells
        .chunk_by(|a, b| a.method == b.method && a.rate == b.rate)
        .collect()
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    sum / n as f64
}

fn f6(v: f64) -> String {
    format!("{v:.6}")
}

fn write_reports(cfg: &BenchConfig, summary: &BenchSummary) -> Result<Vec<PathBuf>> {
    let out = &cfg.out_dir;
    let mut files = Vec::new();
    let cells = &summary.cells;

    let path = out.join("psnr.csv");
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record(["method", "rate", "covers", "mean_mse", "mean_psnr_db"])?;
    for g in groups(cells) {
        let mean_psnr = mean(g.iter().map(|c| c.quality.psnr_db));
        w.write_record([
            g[0].method.name().to_string(),
            rate_label(g[0].rate),
            g.len().to_string(),
            f6(mean(g.iter().map(|c| c.quality.mse))),
            format_db(mean_psnr),
        ])?;
    }
    w.flush()?;
    files.push(path);

    let path = out.join("capacity.csv");
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record(["method", "rate", "cover", "requested_bits", "embedded_bits", "capacity_bits", "shortfall_bits"])?;
    for g in groups(cells) {
        for c in g {
            w.write_record([
                c.method.name().to_string(),
                rate_label(c.rate),
                c.cover.clone(),
                c.requested_bits.to_string(),
                c.embedded_bits.to_string(),
                c.capacity_bits.to_string(),
                (c.requested_bits - c.embedded_bits).to_string(),
            ])?;
        }
        let m = |f: fn(&CellResult) -> usize| mean(g.iter().map(|c| f(c) as f64)).to_string();
        w.write_record([
            g[0].method.name().to_string(),
            rate_label(g[0].rate),
            "mean".to_string(),
            m(|c| c.requested_bits),
            m(|c| c.embedded_bits),
            m(|c| c.capacity_bits),
            m(|c| c.requested_bits - c.embedded_bits),
        ])?;
    }
    w.flush()?;
    files.push(path);

    let path = out.join("rs.csv");
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record(["method", "rate", "rm", "sm", "rm_neg", "sm_neg"])?;
    for g in groups(cells) {
        w.write_record([
            g[0].method.name().to_string(),
            rate_label(g[0].rate),
            f6(mean(g.iter().map(|c| c.rs.rm))),
            f6(mean(g.iter().map(|c| c.rs.sm))),
            f6(mean(g.iter().map(|c| c.rs.rm_neg))),
            f6(mean(g.iter().map(|c| c.rs.sm_neg))),
        ])?;
    }
    w.flush()?;
    files.push(path);

    let path = out.join("dih.csv");
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record(["method", "rate", "cover", "estimate"])?;
    for c in cells {
        let estimate = match &c.dih {
            Ok(r) => f6(*r),
            Err(_) => "undefined".to_string(),
        };
        w.write_record([c.method.name().to_string(), rate_label(c.rate), c.cover.clone(), estimate])?;
    }
    w.flush()?;
    files.push(path);

    for c in cells {
        let path = out.join(format!("pov_{}_{}_{}.csv", c.method, rate_label(c.rate), c.cover));
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(["t", "p_value"])?;
        for p in &c.pov.points {
            w.write_record([format!("{:.4}", p.fraction), format!("{:.10}", p.p_value)])?;
        }
        w.flush()?;
        files.push(path);
    }

    let path = out.join("errors.csv");
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record(["cover", "error"])?;
    for (cover, err) in &summary.failures {
        w.write_record([cover, err])?;
    }
    w.flush()?;
    files.push(path);

    Ok(files)
}
