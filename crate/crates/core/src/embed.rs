//! Embedding and extraction for the four schemes: sequential and keyed-random
//! binary LSB replacement, keyed-random Fibonacci LSB with Zeckendorf
//! skipping, and the 3-plane Fibonacci mapping that carries two bits in every
//! pixel.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::keystream::KeyStream;
use crate::zeckendorf::{encode_pixel, PLANES};

/// Bits in the big-endian length prefix written in header mode.
pub const HEADER_BITS: usize = 32;

/// Cover value substituted when mapping a pixel would exceed 255.
pub const FALLBACK_COVER: u8 = 253;

/// Salt separating the message stream from the permutation stream of a key.
const MESSAGE_SALT: u64 = 0xD1B5_4A32_D192_ED03;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    LsbSequential,
    LsbRandom,
    FibRandom,
    ProposedMapped,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::LsbSequential,
        Method::LsbRandom,
        Method::FibRandom,
        Method::ProposedMapped,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::LsbSequential => "lsb-seq",
            Method::LsbRandom => "lsb-rand",
            Method::FibRandom => "fib-rand",
            Method::ProposedMapped => "mapped",
        }
    }

    /// Upper bound on the embedding rate, in bits per pixel.
    pub fn max_rate(self) -> f64 {
        match self {
            Method::ProposedMapped => 2.0,
            _ => 1.0,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "lsb-seq" | "lsb-sequential" | "lsbsequential" => Ok(Method::LsbSequential),
            "lsb-rand" | "lsb-random" | "lsbrandom" => Ok(Method::LsbRandom),
            "fib-rand" | "fib-random" | "fibrandom" => Ok(Method::FibRandom),
            "mapped" | "proposed" | "proposed-mapped" | "proposedmapped" => Ok(Method::ProposedMapped),
            other => Err(Error::InvalidArgument(format!(
                "unknown method {other:?} (expected lsb-seq, lsb-rand, fib-rand or mapped)"
            ))),
        }
    }
}

/// Two message bits carried by one pixel. `hi` is consumed first and lands
/// in Fibonacci plane 3; `lo` lands in plane 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SecretPair {
    pub hi: bool,
    pub lo: bool,
}

impl SecretPair {
    pub const ALL: [SecretPair; 4] = [
        SecretPair { hi: false, lo: false },
        SecretPair { hi: false, lo: true },
        SecretPair { hi: true, lo: false },
        SecretPair { hi: true, lo: true },
    ];

    pub fn new(hi: bool, lo: bool) -> Self {
        SecretPair { hi, lo }
    }

    /// `0b(hi)(lo)`.
    pub fn bits(self) -> u8 {
        (u8::from(self.hi) << 1) | u8::from(self.lo)
    }
}

/// Low-plane patterns `b3 b2 b1` that a Zeckendorf codeword can show.
pub const REACHABLE_LOW3: [u8; 5] = [0b000, 0b001, 0b010, 0b100, 0b101];

/// Mapping table on the three least significant Fibonacci planes.
///
/// The output always has `(b3, b1) = (hi, lo)`; a cover showing `010` keeps
/// that pattern when the secret is `00`.
pub fn map3(cover3: u8, secret: SecretPair) -> Result<u8> {
    if !REACHABLE_LOW3.contains(&cover3) {
        return Err(Error::InvalidCodeword(cover3));
    }
    if cover3 == 0b010 && secret.bits() == 0 {
        return Ok(0b010);
    }
    Ok((u8::from(secret.hi) << 2) | u8::from(secret.lo))
}

/// Outcome of mapping one pixel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MappedPixel {
    pub value: u8,
    /// The direct mapping overflowed 255 and the fallback cover was used.
    pub fallback: bool,
}

fn map_value(cover: u8, secret: SecretPair) -> u16 {
    let code = encode_pixel(cover);
    let pattern = map3(code.low3(), secret).expect("valid codewords have reachable low planes");
    let mut mapped = code.with_low3(pattern);
    // Setting plane 3 next to a set plane 4 would break Zeckendorf validity.
    if pattern & 0b100 != 0 && !code.plane(3) && code.plane(4) {
        mapped = mapped.with_plane(4, false);
    }
    mapped.value()
}

pub fn embed_pixel_mapped_detail(cover: u8, secret: SecretPair) -> MappedPixel {
    let value = map_value(cover, secret);
    match u8::try_from(value) {
        Ok(value) => MappedPixel { value, fallback: false },
        Err(_) => MappedPixel {
            value: map_value(FALLBACK_COVER, secret) as u8,
            fallback: true,
        },
    }
}

pub fn embed_pixel_mapped(cover: u8, secret: SecretPair) -> u8 {
    embed_pixel_mapped_detail(cover, secret).value
}

pub fn extract_pixel_mapped(stego: u8) -> SecretPair {
    let code = encode_pixel(stego);
    SecretPair { hi: code.plane(3), lo: code.plane(1) }
}

/// Whether Fibonacci plane `plane` of `value` can take either bit: both
/// neighbouring planes are clear and setting it stays within 8 bits. The
/// test never depends on the plane itself, so embedder and extractor agree.
pub fn fib_candidate(value: u8, plane: usize) -> bool {
    let code = encode_pixel(value);
    let below = plane > 1 && code.plane(plane - 1);
    let above = plane < PLANES && code.plane(plane + 1);
    !below && !above && code.with_plane(plane, true).value() <= 255
}

fn fib_set(value: u8, plane: usize, bit: bool) -> u8 {
    encode_pixel(value).with_plane(plane, bit).value() as u8
}

/// Everything both sides must share to embed and extract: the method, the
/// key, and the ordering and plane options.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheme {
    pub method: Method,
    pub seed: u64,
    /// Visit pixels in keyed-random order for [`Method::ProposedMapped`].
    /// The two keyed baselines always use keyed order.
    pub random_order: bool,
    /// Fibonacci plane used by [`Method::FibRandom`] (1-based).
    pub fib_plane: usize,
}

impl Scheme {
    pub fn new(method: Method, seed: u64) -> Self {
        Scheme { method, seed, random_order: false, fib_plane: 1 }
    }

    pub fn with_random_order(mut self, random_order: bool) -> Self {
        self.random_order = random_order;
        self
    }

    pub fn with_fib_plane(mut self, plane: usize) -> Self {
        self.fib_plane = plane;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(1..=PLANES).contains(&self.fib_plane) {
            return Err(Error::InvalidArgument(format!(
                "Fibonacci plane {} outside 1..={PLANES}",
                self.fib_plane
            )));
        }
        Ok(())
    }

    fn keyed(&self) -> bool {
        match self.method {
            Method::LsbSequential => false,
            Method::LsbRandom | Method::FibRandom => true,
            Method::ProposedMapped => self.random_order,
        }
    }

    fn visit_order(&self, n: usize) -> Box<dyn Iterator<Item = usize>> {
        if self.keyed() {
            Box::new(KeyStream::new(self.seed).permutation(n).into_iter())
        } else {
            Box::new(0..n)
        }
    }

    /// Carrier bits available in `cover` under this scheme.
    pub fn capacity(&self, cover: &GrayImage) -> usize {
        match self.method {
            Method::LsbSequential | Method::LsbRandom => cover.len(),
            Method::ProposedMapped => 2 * cover.len(),
            Method::FibRandom => cover
                .pixels()
                .iter()
                .filter(|&&p| fib_candidate(p, self.fib_plane))
                .count(),
        }
    }
}

/// Capacity in bits with default options (plane 1 for [`Method::FibRandom`]).
pub fn capacity(method: Method, cover: &GrayImage) -> usize {
    Scheme::new(method, 0).capacity(cover)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    /// Synthetic message of `ceil(rate * N)` keyed bits, no header. A shortfall
    /// is tolerated for [`Method::FibRandom`].
    Rate(f64),
    /// Explicit bits (any nonzero value is a one), optionally length-prefixed.
    Message { bits: Vec<u8>, header: bool },
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmbedJob {
    pub scheme: Scheme,
    pub payload: Payload,
}

impl EmbedJob {
    pub fn rate(scheme: Scheme, rate: f64) -> Self {
        EmbedJob { scheme, payload: Payload::Rate(rate) }
    }

    pub fn message(scheme: Scheme, bits: Vec<u8>, header: bool) -> Self {
        EmbedJob { scheme, payload: Payload::Message { bits, header } }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StegoResult {
    pub stego: GrayImage,
    /// Message bits written, excluding any length header.
    pub bits_embedded: usize,
    /// Message bits requested, excluding any length header.
    pub bits_requested: usize,
    pub pixels_visited: usize,
    pub pixels_skipped: usize,
    pub pixels_fallback: usize,
    pub max_abs_delta: u8,
}

/// Number of message bits a rate asks for on an image of `pixels` pixels.
pub fn rate_bits(rate: f64, pixels: usize) -> usize {
    (rate * pixels as f64).ceil() as usize
}

/// Keyed synthetic message for rate-mode embedding.
pub fn synthetic_message(seed: u64, len: usize) -> Vec<u8> {
    KeyStream::new(seed ^ MESSAGE_SALT).message_bits(len)
}

fn check_rate(method: Method, rate: f64) -> Result<()> {
    if !rate.is_finite() || rate < 0.0 || rate > method.max_rate() {
        return Err(Error::RateOutOfBounds { rate, max: method.max_rate(), method: method.name() });
    }
    Ok(())
}

pub fn embed(cover: &GrayImage, job: &EmbedJob) -> Result<StegoResult> {
    let scheme = &job.scheme;
    scheme.validate()?;
    let n = cover.len();

    let (stream, header_len, strict) = match &job.payload {
        Payload::Rate(rate) => {
            check_rate(scheme.method, *rate)?;
            (synthetic_message(scheme.seed, rate_bits(*rate, n)), 0, false)
        }
        Payload::Message { bits, header } => {
            let mut stream = Vec::with_capacity(bits.len() + HEADER_BITS);
            if *header {
                let len = u32::try_from(bits.len()).map_err(|_| Error::Capacity {
                    needed: bits.len(),
                    available: u32::MAX as usize,
                })?;
                stream.extend((0..HEADER_BITS).rev().map(|i| (len >> i & 1) as u8));
            }
            stream.extend(bits.iter().map(|&b| u8::from(b != 0)));
            (stream, if *header { HEADER_BITS } else { 0 }, true)
        }
    };

    let available = scheme.capacity(cover);
    if stream.len() > available && (strict || scheme.method != Method::FibRandom) {
        return Err(Error::Capacity { needed: stream.len(), available });
    }

    let mut stego = cover.clone();
    let px = stego.pixels_mut();
    let mut bits = stream.iter().map(|&b| b != 0).peekable();
    let (mut written, mut visited, mut skipped, mut fallback) = (0usize, 0usize, 0usize, 0usize);

    for i in scheme.visit_order(n) {
        if bits.peek().is_none() {
            break;
        }
        visited += 1;
        match scheme.method {
            Method::LsbSequential | Method::LsbRandom => {
                let bit = bits.next().unwrap_or_default();
                px[i] = (px[i] & !1) | u8::from(bit);
                written += 1;
            }
            Method::FibRandom => {
                if fib_candidate(px[i], scheme.fib_plane) {
                    let bit = bits.next().unwrap_or_default();
                    px[i] = fib_set(px[i], scheme.fib_plane, bit);
                    written += 1;
                } else {
                    skipped += 1;
                }
            }
            Method::ProposedMapped => {
                let hi = bits.next().unwrap_or_default();
                // An odd-length message pads the final pair with a zero.
                let lo = bits.next();
                written += 1 + usize::from(lo.is_some());
                let mapped = embed_pixel_mapped_detail(px[i], SecretPair::new(hi, lo.unwrap_or(false)));
                fallback += usize::from(mapped.fallback);
                px[i] = mapped.value;
            }
        }
    }

    let max_abs_delta = cover
        .pixels()
        .iter()
        .zip(stego.pixels())
        .map(|(&a, &b)| a.abs_diff(b))
        .max()
        .unwrap_or(0);

    Ok(StegoResult {
        stego,
        bits_embedded: written.saturating_sub(header_len),
        bits_requested: stream.len() - header_len,
        pixels_visited: visited,
        pixels_skipped: skipped,
        pixels_fallback: fallback,
        max_abs_delta,
    })
}

/// How the extractor learns the message length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Framing {
    /// Read a 32-bit big-endian bit count first.
    Header,
    /// The caller knows the length in bits.
    Length(usize),
}

/// Carrier bits of `stego` in embedding order.
pub fn carrier_bits<'a>(stego: &'a GrayImage, scheme: &Scheme) -> impl Iterator<Item = u8> + 'a {
    let px = stego.pixels();
    let method = scheme.method;
    let plane = scheme.fib_plane;
    scheme.visit_order(stego.len()).flat_map(move |i| {
        let v = px[i];
        let pair: [Option<u8>; 2] = match method {
            Method::LsbSequential | Method::LsbRandom => [Some(v & 1), None],
            Method::FibRandom => {
                if fib_candidate(v, plane) {
                    [Some(u8::from(encode_pixel(v).plane(plane))), None]
                } else {
                    [None, None]
                }
            }
            Method::ProposedMapped => {
                let s = extract_pixel_mapped(v);
                [Some(u8::from(s.hi)), Some(u8::from(s.lo))]
            }
        };
        pair.into_iter().flatten()
    })
}

pub fn extract(stego: &GrayImage, scheme: &Scheme, framing: Framing) -> Result<Vec<u8>> {
    scheme.validate()?;
    let available = scheme.capacity(stego);
    let mut carrier = carrier_bits(stego, scheme);
    let len = match framing {
        Framing::Length(len) => {
            if len > available {
                return Err(Error::Capacity { needed: len, available });
            }
            len
        }
        Framing::Header => {
            if available < HEADER_BITS {
                return Err(Error::CorruptStream(format!(
                    "capacity {available} cannot hold a {HEADER_BITS}-bit header"
                )));
            }
            let len = carrier
                .by_ref()
                .take(HEADER_BITS)
                .fold(0u64, |acc, b| (acc << 1) | u64::from(b)) as usize;
            if len > available - HEADER_BITS {
                return Err(Error::CorruptStream(format!(
                    "header claims {len} bits but only {} are available",
                    available - HEADER_BITS
                )));
            }
            len
        }
    };
    let bits: Vec<u8> = carrier.take(len).collect();
    if bits.len() != len {
        return Err(Error::CorruptStream(format!("stream ended after {} of {len} bits", bits.len())));
    }
    Ok(bits)
}

/// Unpacks bytes most significant bit first.
pub fn bytes_to_bits(bytes: &[u8]) -> Vec<u8> {
    bytes
        .iter()
        .flat_map(|&byte| (0..8).rev().map(move |i| byte >> i & 1))
        .collect()
}

/// Packs bits most significant bit first; a trailing partial byte is zero-padded.
pub fn bits_to_bytes(bits: &[u8]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | (u8::from(b != 0) << (7 - i)))
        })
        .collect()
}
