use thiserror::Error;

/// Errors produced by the codec, container, embedding and analysis layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("value {0} is outside the 12-plane Fibonacci range 0..=376")]
    ValueOutOfRange(u32),

    #[error("pattern {0:03b} is not a Zeckendorf-reachable low-plane pattern")]
    InvalidCodeword(u8),

    #[error("malformed PGM: {0}")]
    Parse(String),

    #[error("unsupported PGM depth: maxval {0} (only 8-bit grayscale is supported)")]
    UnsupportedDepth(u32),

    #[error("invalid image dimensions {width}x{height}")]
    InvalidDimensions { width: usize, height: usize },

    #[error("image shapes differ: {a:?} vs {b:?}")]
    ShapeMismatch { a: (usize, usize), b: (usize, usize) },

    #[error("message of {needed} bits exceeds capacity of {available} bits")]
    Capacity { needed: usize, available: usize },

    #[error("embedding rate {rate} is outside 0..={max} for {method}")]
    RateOutOfBounds { rate: f64, max: f64, method: &'static str },

    #[error("corrupt stego stream: {0}")]
    CorruptStream(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("estimate undefined: {0}")]
    EstimateUndefined(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
