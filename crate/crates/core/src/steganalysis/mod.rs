//! Detectors: RS group analysis, the pairs-of-values chi-square attack, and
//! difference-image-histogram ratio estimation.

pub mod chi2;
pub mod dih;
pub mod pov;
pub mod rs;

pub use chi2::{chi_square_cdf, chi_square_sf};
pub use dih::{dih_estimate, DihEstimate, DifferenceHistograms};
pub use pov::{pov_analyze, PovCurve, PovPoint};
pub use rs::{flip_f1, flip_fneg1, rs_analyze, RsParams, RsReport};

/// Default cumulative scan step for the POV attack.
pub const DEFAULT_POV_STEP: f64 = 0.01;
