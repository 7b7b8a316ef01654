use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use fibsteg::bench::{run_bench, BenchConfig};
use fibsteg::embed::{bits_to_bytes, bytes_to_bits};
use fibsteg::steganalysis::{dih_estimate, pov_analyze, rs_analyze, RsParams, DEFAULT_POV_STEP};
use fibsteg::{capacity, embed, extract, psnr, EmbedJob, Framing, GrayImage, Method, Scheme};

#[derive(Parser)]
#[command(name = "fibsteg", version, about = "Fibonacci bit-plane steganography and steganalysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hide a message file, or a keyed synthetic message at a given rate.
    Embed(EmbedArgs),
    /// Recover a message written by `embed --message`.
    Extract(ExtractArgs),
    /// Run a detector on an image.
    Analyze(AnalyzeArgs),
    /// Print the carrier capacity of an image in bits.
    Capacity {
        #[arg(long, value_parser = parse_method)]
        method: Method,
        #[arg(long)]
        image: PathBuf,
    },
    /// Print MSE and PSNR between two images.
    Psnr {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        stego: PathBuf,
    },
    /// Embed every cover at every rate and write CSV reports.
    Bench {
        #[arg(long)]
        covers: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: u64,
        /// Also write the stego images under OUT/stego.
        #[arg(long)]
        save_stegos: bool,
    },
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long, value_parser = parse_method)]
    method: Method,
    #[arg(long)]
    cover: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    seed: u64,
    /// Synthetic payload in bits per pixel.
    #[arg(long, conflicts_with = "message", required_unless_present = "message")]
    rate: Option<f64>,
    #[arg(long)]
    message: Option<PathBuf>,
    /// Omit the 32-bit length header; the extractor then needs --length.
    #[arg(long, requires = "message")]
    no_header: bool,
    /// Keyed pixel order for the mapped method.
    #[arg(long)]
    random_order: bool,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long, value_parser = parse_method)]
    method: Method,
    #[arg(long)]
    stego: PathBuf,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Message length in bits, for stegos written with --no-header.
    #[arg(long)]
    length: Option<usize>,
    #[arg(long)]
    random_order: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Tool {
    Rs,
    Pov,
    Dih,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long, value_enum)]
    tool: Tool,
    #[arg(long)]
    image: PathBuf,
    /// Write the result as CSV as well.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: fibsteg::Error| e.to_string())
}

fn load(path: &PathBuf) -> Result<GrayImage> {
    GrayImage::load(path).with_context(|| format!("cannot read {}", path.display()))
}

fn cmd_embed(a: EmbedArgs) -> Result<()> {
    let cover = load(&a.cover)?;
    let scheme = Scheme::new(a.method, a.seed).with_random_order(a.random_order);
    let job = match (&a.message, a.rate) {
        (Some(path), _) => {
            let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
            EmbedJob::message(scheme, bytes_to_bits(&bytes), !a.no_header)
        }
        (None, Some(rate)) => EmbedJob::rate(scheme, rate),
        (None, None) => bail!("either --rate or --message is required"),
    };
    let out = embed(&cover, &job)?;
    out.stego.save(&a.out).with_context(|| format!("cannot write {}", a.out.display()))?;
    println!("embedded {} of {} bits", out.bits_embedded, out.bits_requested);
    Ok(())
}

fn cmd_extract(a: ExtractArgs) -> Result<()> {
    let stego = load(&a.stego)?;
    let scheme = Scheme::new(a.method, a.seed).with_random_order(a.random_order);
    let framing = a.length.map_or(Framing::Header, Framing::Length);
    let bits = extract(&stego, &scheme, framing)?;
    fs::write(&a.out, bits_to_bytes(&bits)).with_context(|| format!("cannot write {}", a.out.display()))?;
    println!("extracted {} bits", bits.len());
    Ok(())
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<()> {
    let img = load(&a.image)?;
    let mut csv = String::new();
    match a.tool {
        Tool::Rs => {
            let r = rs_analyze(&img, &RsParams::default())?;
            println!("RM={:.4} SM={:.4} RM-={:.4} SM-={:.4}", r.rm, r.sm, r.rm_neg, r.sm_neg);
            csv.push_str("rm,sm,rm_neg,sm_neg\n");
            csv.push_str(&format!("{:.6},{:.6},{:.6},{:.6}\n", r.rm, r.sm, r.rm_neg, r.sm_neg));
        }
        Tool::Pov => {
            let curve = pov_analyze(&img, DEFAULT_POV_STEP)?;
            csv.push_str("t,p_value\n");
            for p in &curve.points {
                println!("{:.2} {:.6}", p.fraction, p.p_value);
                csv.push_str(&format!("{:.4},{:.10}\n", p.fraction, p.p_value));
            }
        }
        Tool::Dih => {
            let d = dih_estimate(&img)?;
            println!("{:.6}", d.ratio);
            csv.push_str(&format!("estimate\n{:.6}\n", d.ratio));
        }
    }
    if let Some(path) = a.csv {
        fs::write(&path, csv).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Embed(a) => cmd_embed(a),
        Command::Extract(a) => cmd_extract(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Capacity { method, image } => {
            println!("{}", capacity(method, &load(&image)?));
            Ok(())
        }
        Command::Psnr { cover, stego } => {
            let q = psnr(&load(&cover)?, &load(&stego)?)?;
            println!("mse={:.6} psnr={}", q.mse, q.psnr_text());
            Ok(())
        }
        Command::Bench { covers, out, seed, save_stegos } => {
            let mut cfg = BenchConfig::new(covers, out, seed);
            cfg.save_stegos = save_stegos;
            let summary = run_bench(&cfg)?;
            for (cover, err) in &summary.failures {
                eprintln!("skipped {cover}: {err}");
            }
            println!("{} covers, {} files written", summary.covers.len(), summary.files.len());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
