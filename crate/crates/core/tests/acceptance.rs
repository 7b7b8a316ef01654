//! Acceptance criteria, one line of output each. Runs without the libtest
//! harness so the verdicts are always printed.

mod common;

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{chi2_cdf_quadrature, covers, cover_dir};
use fibsteg::bench::{run_bench, BenchConfig};
use fibsteg::embed::fib_candidate;
use fibsteg::steganalysis::{chi_square_cdf, dih_estimate, pov_analyze, rs_analyze, PovCurve, RsParams, DEFAULT_POV_STEP};
use fibsteg::zeckendorf::FibCodeword;
use fibsteg::{decode, embed, embed_pixel_mapped, encode, extract_pixel_mapped, psnr, EmbedJob, GrayImage, Method, Scheme, SecretPair};

const SEED: u64 = 20_240_601;

type Check<'a> = Box<dyn Fn() -> Verdict + 'a>;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn stego(cover: &GrayImage, method: Method, rate: f64) -> GrayImage {
    embed(cover, &EmbedJob::rate(Scheme::new(method, SEED), rate)).unwrap().stego
}

fn no_adjacent_ones(bits: u16) -> bool {
    bits & (bits >> 1) == 0
}

fn mapping_correctness() -> Verdict {
    let mut failures = 0;
    for cover in 0..=255u8 {
        for secret in SecretPair::ALL {
            let s = embed_pixel_mapped(cover, secret);
            let ok = extract_pixel_mapped(s) == secret && no_adjacent_ones(encode(u16::from(s)).unwrap().bits());
            failures += usize::from(!ok);
        }
    }
    verdict(failures == 0, format!("{failures} failures over 1024 cases"))
}

fn zeckendorf_codec() -> Verdict {
    let roundtrip = (0u16..=376).all(|v| decode(encode(v).unwrap()) == v);
    let valid: Vec<u16> = (0u16..4096).filter(|&b| no_adjacent_ones(b)).collect();
    let canonical = valid.len() == 377
        && valid.iter().all(|&b| {
            let weight: u16 = (0..12).filter(|i| b >> i & 1 == 1).map(|i| fibsteg::zeckendorf::FIB_WEIGHTS[i]).sum();
            encode(weight).unwrap() == FibCodeword::from_bits(b).unwrap()
        });
    let c255 = encode(255).unwrap();
    let expected = c255.bits() == (1 << 0 | 1 << 6 | 1 << 11);
    verdict(
        roundtrip && canonical && expected,
        format!("roundtrip={roundtrip} canonical={canonical} 255={c255}"),
    )
}

fn capacity(covers: &[(String, GrayImage)]) -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, cover) in covers {
        let bits = |m: Method, r: f64| embed(cover, &EmbedJob::rate(Scheme::new(m, SEED), r)).unwrap().bits_embedded;
        let seq = bits(Method::LsbSequential, 1.0);
        let rand = bits(Method::LsbRandom, 1.0);
        let mapped = bits(Method::ProposedMapped, 2.0);
        let fib = bits(Method::FibRandom, 1.0);
        let formula = cover.pixels().iter().filter(|&&p| fib_candidate(p, 1)).count();
        let square = cover.width() == 512 && cover.height() == 512;
        ok &= square && seq == 262_144 && rand == 262_144 && mapped == 524_288 && fib < 262_144 && fib == formula;
        notes.push(format!("{name}: lsb={seq}/{rand} mapped={mapped} fib={fib}"));
    }
    verdict(ok && !covers.is_empty(), notes.join("; "))
}

fn quality(covers: &[(String, GrayImage)]) -> Verdict {
    let mean_psnr = |m: Method, r: f64| {
        covers.iter().map(|(_, c)| psnr(c, &stego(c, m, r)).unwrap().psnr_db).sum::<f64>() / covers.len() as f64
    };
    let lsb = mean_psnr(Method::LsbSequential, 1.0);
    let mapped = mean_psnr(Method::ProposedMapped, 2.0);
    verdict(
        covers.len() >= 3 && (lsb - 51.1).abs() <= 0.3 && mapped >= 39.0,
        format!("LSB rate 1.0 {lsb:.3} dB, mapped rate 2.0 {mapped:.3} dB"),
    )
}

fn rs_separation(covers: &[(String, GrayImage)]) -> Verdict {
    let params = RsParams::default();
    let mut ok = true;
    let mut notes = Vec::new();
    let mut mapped_gap = 0.0;
    for (name, cover) in covers {
        let clean = rs_analyze(cover, &params).unwrap();
        let lsb = rs_analyze(&stego(cover, Method::LsbSequential, 1.0), &params).unwrap();
        let mapped = rs_analyze(&stego(cover, Method::ProposedMapped, 2.0), &params).unwrap();
        let clean_r = (clean.rm - clean.rm_neg).abs();
        let clean_s = (clean.sm - clean.sm_neg).abs();
        let lsb_gap = lsb.rm_neg - lsb.rm;
        let gap = (mapped.rm - mapped.rm_neg).abs();
        mapped_gap += gap / covers.len() as f64;
        ok &= clean_r <= 3.0 && clean_s <= 3.0 && lsb_gap >= 10.0;
        notes.push(format!("{name}: clean |dR|={clean_r:.2} |dS|={clean_s:.2}, lsb RM--RM={lsb_gap:.2}, mapped |dR|={gap:.2}"));
    }
    ok &= mapped_gap <= 3.0;
    notes.push(format!("mean mapped |dR|={mapped_gap:.2}"));
    verdict(ok && !covers.is_empty(), notes.join("; "))
}

fn share(curve: &PovCurve, pred: impl Fn(f64, f64) -> bool) -> f64 {
    let hits = curve.points.iter().filter(|p| pred(p.fraction, p.p_value)).count();
    hits as f64 / curve.points.len() as f64
}

fn late_share_low(curve: &PovCurve) -> f64 {
    let late: Vec<_> = curve.points.iter().filter(|p| p.fraction > 0.2).collect();
    late.iter().filter(|p| p.p_value <= 0.1).count() as f64 / late.len() as f64
}

fn pov_behaviour(covers: &[(String, GrayImage)]) -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, cover) in covers {
        let lsb = pov_analyze(&stego(cover, Method::LsbSequential, 1.0), DEFAULT_POV_STEP).unwrap();
        let clean = pov_analyze(cover, DEFAULT_POV_STEP).unwrap();
        let mapped = pov_analyze(&stego(cover, Method::ProposedMapped, 2.0), DEFAULT_POV_STEP).unwrap();
        let lsb_high = share(&lsb, |_, p| p >= 0.9);
        let clean_low = late_share_low(&clean);
        let mapped_low = late_share_low(&mapped);
        ok &= lsb_high >= 0.9 && clean_low >= 0.8 && mapped_low >= 0.8;
        notes.push(format!("{name}: lsb {lsb_high:.2} high, clean {clean_low:.2} low, mapped {mapped_low:.2} low"));
    }
    verdict(ok && !covers.is_empty(), notes.join("; "))
}

fn dih_estimates(covers: &[(String, GrayImage)]) -> Verdict {
    let est = |img: &GrayImage| dih_estimate(img).map(|d| d.ratio).unwrap_or(f64::NAN);
    let mut ok = true;
    let mut notes = Vec::new();
    let mut mapped_mean = 0.0;
    for (name, cover) in covers {
        let clean = est(cover);
        let lsb = est(&stego(cover, Method::LsbSequential, 1.0));
        let mapped = est(&stego(cover, Method::ProposedMapped, 2.0));
        mapped_mean += mapped.abs() / covers.len() as f64;
        ok &= clean.abs() <= 0.15 && lsb >= 0.7;
        notes.push(format!("{name}: clean {clean:.3}, lsb {lsb:.3}, mapped {mapped:.3}"));
    }
    ok &= mapped_mean <= 0.2;
    notes.push(format!("mean mapped |est|={mapped_mean:.3}"));
    verdict(ok && !covers.is_empty(), notes.join("; "))
}

fn chi_square_oracle() -> Verdict {
    let mut worst: f64 = 0.0;
    for k in [1u32, 2, 3, 4, 5, 6, 8, 10, 16, 31, 64, 127, 255] {
        for x in [0.05, 0.3, 1.0, 2.0, 4.0, 7.5, 12.0, 25.0, 60.0, 110.0, 160.0, 280.0] {
            worst = worst.max((chi_square_cdf(x, k) - chi2_cdf_quadrature(x, k)).abs());
        }
    }
    let mut closed: f64 = 0.0;
    for x in [0.05, 0.3, 1.0, 2.0, 4.0, 7.5, 12.0, 25.0, 60.0] {
        closed = closed.max((chi_square_cdf(x, 2) - (1.0 - (-x / 2.0f64).exp())).abs());
    }
    verdict(worst <= 1e-8 && closed <= 1e-8, format!("max error {worst:.2e} vs quadrature, {closed:.2e} vs dof 2 closed form"))
}

fn tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        out.insert(path.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&path).unwrap());
    }
    out
}

fn determinism() -> Verdict {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        run_bench(&BenchConfig::new(cover_dir(), dir.path(), SEED)).unwrap();
    }
    let (ta, tb) = (tree(a.path()), tree(b.path()));
    verdict(!ta.is_empty() && ta == tb, format!("{} files per run", ta.len()))
}

fn main() -> ExitCode {
    let covers = covers();
    let criteria: Vec<(&str, Option<Duration>, Check)> = vec![
        ("1 mapping correctness", Some(Duration::from_secs(1)), Box::new(mapping_correctness)),
        ("2 zeckendorf codec", Some(Duration::from_secs(1)), Box::new(zeckendorf_codec)),
        ("3 capacity", None, Box::new(|| capacity(&covers))),
        ("4 stego quality", Some(Duration::from_secs(10)), Box::new(|| quality(&covers))),
        ("5 rs separation", Some(Duration::from_secs(30)), Box::new(|| rs_separation(&covers))),
        ("6 pov behaviour", Some(Duration::from_secs(60)), Box::new(|| pov_behaviour(&covers))),
        ("7 dih estimates", Some(Duration::from_secs(30)), Box::new(|| dih_estimates(&covers))),
        ("8 chi-square cdf", None, Box::new(chi_square_oracle)),
        ("9 bench determinism", None, Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, limit, check) in &criteria {
        let start = Instant::now();
        let v = check();
        let took = start.elapsed();
        let in_time = limit.is_none_or(|l| took <= l);
        let pass = v.pass && in_time;
        failed += usize::from(!pass);
        let budget = limit.map_or(String::new(), |l| format!(" / {}s", l.as_secs()));
        println!(
            "criterion {name}: {} [{:.2}s{budget}] {}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            v.detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
