//! Singing voice correction by temporal alignment to a reference rendition.
//!
//! The pipeline decodes a source take and a reference vocal, extracts
//! vocoder parameters (F0 contour, spectral envelope, aperiodicity) on a
//! 5 ms frame grid, aligns the two takes with canonical time warping over
//! mel-cepstral features, then re-synthesizes the source with the
//! reference pitch contour and the source timbre stretched onto the
//! reference timeline.
//!
//! Alongside the correction pipeline, the crate carries the evaluation
//! toolkit used to study it: the standard melody-extraction metrics
//! (OA/RPA/RCA/VR/VFA at a ±50 cent tolerance) and maximum-likelihood
//! scaling of pairwise comparisons into JOD quality scores with bootstrap
//! confidence intervals.

pub mod align;
pub mod audio;
pub mod correct;
pub mod melody;
pub mod scaling;
pub mod vocoder;

pub mod mcep;

mod error;
pub(crate) mod spectrum;

pub use error::{Error, Result};
