//! 8-bit grayscale raster and its PGM (P5 binary / P2 ASCII) container.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Row-major 8-bit grayscale image, top-left pixel first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || width.checked_mul(height) != Some(pixels.len()) {
            return Err(Error::InvalidDimensions { width, height });
        }
        Ok(GrayImage { width, height, pixels })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        let len = width
            .checked_mul(height)
            .ok_or(Error::InvalidDimensions { width, height })?;
        GrayImage::new(width, height, vec![value; len])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width.saturating_mul(height));
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        GrayImage::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> Option<u8> {
        (x < self.width && y < self.height).then(|| self.pixels[y * self.width + x])
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.pixels.chunks_exact(self.width)
    }

    pub fn map(&self, f: impl Fn(u8) -> u8) -> GrayImage {
        GrayImage {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().map(|&p| f(p)).collect(),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        read_pgm(&fs::read(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, write_pgm(self))?;
        Ok(())
    }
}

struct Header<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.data.get(self.pos) {
                None => Error::Parse(format!("unexpected end of data reading {what}")),
                Some(b) => Error::Parse(format!("expected {what}, found byte {b:#04x}")),
            });
        }
        // Slice is ASCII digits only.
        let digits = std::str::from_utf8(&self.data[start..self.pos]).unwrap_or_default();
        digits
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("{what} {digits} is too large")))
    }
}

/// Parses a binary (`P5`) or ASCII (`P2`) PGM. `#` comments may appear
/// anywhere in the header. Sample values are kept as stored (no rescaling
/// for `maxval < 255`).
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let binary = match bytes.get(..2) {
        Some(b"P5") => true,
        Some(b"P2") => false,
        _ => return Err(Error::Parse("missing P5/P2 magic".into())),
    };
    let mut header = Header { data: bytes, pos: 2 };
    if !header.data.get(2).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
        return Err(Error::Parse("magic must be followed by whitespace".into()));
    }
    let width = header.number("width")? as usize;
    let height = header.number("height")? as usize;
    let maxval = header.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::InvalidDimensions { width, height });
    }
    if maxval == 0 {
        return Err(Error::Parse("maxval must be positive".into()));
    }
    if maxval > 255 {
        return Err(Error::UnsupportedDepth(maxval));
    }
    let count = width
        .checked_mul(height)
        .ok_or(Error::InvalidDimensions { width, height })?;

    let pixels = if binary {
        // Exactly one whitespace byte separates maxval from the raster.
        match bytes.get(header.pos) {
            Some(b) if b.is_ascii_whitespace() => {}
            _ => return Err(Error::Parse("missing separator before raster".into())),
        }
        let start = header.pos + 1;
        let raster = bytes
            .get(start..)
            .filter(|r| r.len() >= count)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "truncated raster: expected {count} bytes, found {}",
                    bytes.len().saturating_sub(start)
                ))
            })?;
        raster[..count].to_vec()
    } else {
        // Each ASCII sample needs at least two bytes, which bounds the allocation.
        let remaining = bytes.len() - header.pos;
        if count > remaining.div_ceil(2) + 1 {
            return Err(Error::Parse(format!("truncated raster: expected {count} samples")));
        }
        let mut pixels = Vec::with_capacity(count);
        for _ in 0..count {
            pixels.push(header.number("sample")?);
        }
        pixels
            .into_iter()
            .map(|v| u8::try_from(v).ok().filter(|&v| u32::from(v) <= maxval))
            .collect::<Option<Vec<u8>>>()
            .ok_or_else(|| Error::Parse(format!("sample exceeds maxval {maxval}")))?
    };
    if binary && maxval < 255 && pixels.iter().any(|&p| u32::from(p) > maxval) {
        return Err(Error::Parse(format!("sample exceeds maxval {maxval}")));
    }
    GrayImage::new(width, height, pixels)
}

/// Binary P5 with header `P5\n<w> <h>\n255\n` followed by raw samples.
pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", img.width, img.height);
    let mut out = Vec::with_capacity(header.len() + img.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(&img.pixels);
    out
}
