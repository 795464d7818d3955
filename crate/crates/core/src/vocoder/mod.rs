//! Vocoder analysis and synthesis on a 16 kHz / 5 ms frame grid.
//!
//! Analysis splits a clip into the parameter triple (F0 contour, spectral
//! envelope, aperiodicity); synthesis rebuilds audio from the triple with a
//! pulse-plus-noise excitation filtered by per-frame minimum-phase filters.
//!
//! The estimators favor the two properties that matter for re-synthesis
//! quality: F0 values are continuous (parabolic refinement of the
//! normalized-autocorrelation peak, never snapped to a grid) and the voicing
//! decision is biased toward voiced via a low clarity threshold.

mod aperiodicity;
mod envelope;
mod f0;
mod synthesis;

use crate::audio::AudioClip;
use crate::{Error, Result};

/// Frame-analysis parameters. Defaults: 16 kHz, 5 ms hop, 64 ms window.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    /// Working sample rate, Hz.
    pub sample_rate: u32,
    /// Hop between frame centers, seconds.
    pub hop: f64,
    /// Analysis window length, seconds.
    pub window: f64,
    /// FFT length; power of two, at least the window in samples.
    pub fft_size: usize,
    /// Lowest F0 candidate, Hz.
    pub f0_floor: f64,
    /// Highest F0 candidate, Hz.
    pub f0_ceil: f64,
    /// Frames whose peak autocorrelation clarity falls below this are unvoiced.
    pub voicing_threshold: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            sample_rate: crate::audio::PIPELINE_RATE,
            hop: 0.005,
            window: 0.064,
            fft_size: 1024,
            f0_floor: 55.0,
            f0_ceil: 1000.0,
            voicing_threshold: 0.45,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sample_rate == 0 {
            return Err(Error::InvalidSampleRate(self.sample_rate));
        }
        if !(self.hop > 0.0 && self.window > 0.0) {
            return Err(Error::InvalidConfig("hop and window must be positive".into()));
        }
        if !(self.f0_floor > 0.0 && self.f0_floor < self.f0_ceil) {
            return Err(Error::InvalidConfig("need 0 < f0_floor < f0_ceil".into()));
        }
        if self.f0_ceil >= self.sample_rate as f64 / 2.0 {
            return Err(Error::InvalidConfig("f0_ceil must stay below Nyquist".into()));
        }
        if !(0.0 < self.voicing_threshold && self.voicing_threshold < 1.0) {
            return Err(Error::InvalidConfig("voicing_threshold must be in (0, 1)".into()));
        }
        if !self.fft_size.is_power_of_two() || self.fft_size < self.window_samples() {
            return Err(Error::InvalidConfig(
                "fft_size must be a power of two covering the window".into(),
            ));
        }
        // The autocorrelation needs room for the longest candidate lag.
        if self.max_lag() + 2 >= self.window_samples() * 3 / 4 {
            return Err(Error::InvalidConfig(
                "f0_floor too low for the analysis window".into(),
            ));
        }
        Ok(())
    }

    pub fn hop_samples(&self) -> usize {
        (self.hop * self.sample_rate as f64).round() as usize
    }

    pub fn window_samples(&self) -> usize {
        (self.window * self.sample_rate as f64).round() as usize
    }

    /// Frames for a clip of `samples` length: floor(duration / hop) + 1.
    pub fn frame_count(&self, samples: usize) -> usize {
        samples / self.hop_samples() + 1
    }

    /// Bins per spectral frame, fft_size / 2 + 1.
    pub fn spectrum_bins(&self) -> usize {
        self.fft_size / 2 + 1
    }

    pub(crate) fn min_lag(&self) -> usize {
        ((self.sample_rate as f64 / self.f0_ceil).floor() as usize).max(2)
    }

    pub(crate) fn max_lag(&self) -> usize {
        (self.sample_rate as f64 / self.f0_floor).ceil() as usize
    }

    pub(crate) fn check_clip(&self, clip: &AudioClip) -> Result<()> {
        self.validate()?;
        if clip.sample_rate() != self.sample_rate {
            return Err(Error::InvalidConfig(format!(
                "clip rate {} Hz does not match analysis rate {} Hz",
                clip.sample_rate(),
                self.sample_rate
            )));
        }
        if clip.len() < self.window_samples() {
            return Err(Error::ClipTooShort {
                samples: clip.len(),
                window: self.window_samples(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_grid(&self, clip: &AudioClip, f0: &PitchContour) -> Result<()> {
        self.check_clip(clip)?;
        if (f0.hop - self.hop).abs() > 1e-12 {
            return Err(Error::InvalidConfig(format!(
                "contour hop {} s does not match analysis hop {} s",
                f0.hop, self.hop
            )));
        }
        let expected = self.frame_count(clip.len());
        if f0.len() != expected {
            return Err(Error::FrameCountMismatch { expected, got: f0.len() });
        }
        Ok(())
    }
}

/// Frame-synchronous fundamental frequency contour; 0.0 marks unvoiced frames.
#[derive(Debug, Clone, PartialEq)]
pub struct PitchContour {
    /// Frame spacing, seconds.
    pub hop: f64,
    /// Per-frame F0 in Hz.
    pub f0: Vec<f64>,
}

impl PitchContour {
    pub fn new(hop: f64, f0: Vec<f64>) -> Self {
        Self { hop, f0 }
    }

    pub fn len(&self) -> usize {
        self.f0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f0.is_empty()
    }

    pub fn is_voiced(&self, frame: usize) -> bool {
        self.f0[frame] > 0.0
    }

    pub fn voiced_frames(&self) -> usize {
        self.f0.iter().filter(|&&v| v > 0.0).count()
    }
}

/// Per-frame power spectra, frames x (fft_size / 2 + 1), strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralEnvelope {
    pub frames: Vec<Vec<f64>>,
}

impl SpectralEnvelope {
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn bins(&self) -> usize {
        self.frames.first().map_or(0, Vec::len)
    }
}

/// Per-frame, per-bin fraction of noise energy in [0, 1].
/// Unvoiced frames are all-ones rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Aperiodicity {
    pub frames: Vec<Vec<f64>>,
}

impl Aperiodicity {
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn bins(&self) -> usize {
        self.frames.first().map_or(0, Vec::len)
    }
}

/// The vocoder parameter triple; all three share one frame count.
#[derive(Debug, Clone, PartialEq)]
pub struct VocoderFeatures {
    pub f0: PitchContour,
    pub sp: SpectralEnvelope,
    pub ap: Aperiodicity,
}

impl VocoderFeatures {
    pub fn frame_count(&self) -> usize {
        self.f0.len()
    }
}

pub use aperiodicity::estimate_aperiodicity;
pub use envelope::estimate_envelope;
pub use f0::estimate_f0;
pub use synthesis::synthesize;

/// Full analysis: F0, spectral envelope and aperiodicity on a shared grid.
pub fn analyze(clip: &AudioClip, cfg: &AnalysisConfig) -> Result<VocoderFeatures> {
    let f0 = estimate_f0(clip, cfg)?;
    let sp = estimate_envelope(clip, &f0, cfg)?;
    let ap = estimate_aperiodicity(clip, &f0, cfg)?;
    Ok(VocoderFeatures { f0, sp, ap })
}

/// Windowed frame segment centered at `center`, zero-padded at the edges.
pub(crate) fn frame_segment(samples: &[f64], center: isize, width: usize) -> Vec<f64> {
    let start = center - width as isize / 2;
    (0..width as isize)
        .map(|m| {
            let idx = start + m;
            if idx >= 0 && (idx as usize) < samples.len() {
                samples[idx as usize]
            } else {
                0.0
            }
        })
        .collect()
}
