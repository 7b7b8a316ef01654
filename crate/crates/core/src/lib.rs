//! Fibonacci bit-plane steganography for 8-bit grayscale images.
//!
//! The mapping embedder carries two message bits in every pixel by choosing
//! the three least significant Zeckendorf planes so that planes 3 and 1 hold
//! the bits. Sequential and keyed-random binary LSB replacement and
//! keyed-random Fibonacci LSB embedding are provided as baselines, together
//! with RS, pairs-of-values and difference-histogram detectors and a
//! benchmark harness that writes CSV reports.

pub mod bench;
pub mod embed;
pub mod error;
pub mod image;
pub mod keystream;
pub mod metrics;
pub mod steganalysis;
pub mod zeckendorf;

pub use embed::{
    capacity, embed, embed_pixel_mapped, extract, extract_pixel_mapped, map3, EmbedJob, Framing, Method,
    Payload, Scheme, SecretPair, StegoResult,
};
pub use error::{Error, Result};
pub use image::{read_pgm, write_pgm, GrayImage};
pub use keystream::KeyStream;
pub use metrics::{psnr, QualityReport};
pub use zeckendorf::{decode, encode, is_valid, FibCodeword};
