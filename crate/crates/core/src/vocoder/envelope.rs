//! Spectral envelope estimation by cepstral liftering of the log power spectrum.

use super::{AnalysisConfig, PitchContour, SpectralEnvelope};
use crate::audio::AudioClip;
use crate::spectrum::{cepstrum_of_log_spectrum, fft_real, hann};
use crate::Result;

/// Lifter cutoff for unvoiced frames, Hz.
const DEFAULT_CUTOFF_F0: f64 = 200.0;

/// Relative floor applied to each output row.
const ENVELOPE_FLOOR: f64 = 1e-12;

/// Per-frame power spectrum of a Hann-windowed segment, smoothed by cepstral
/// liftering with cutoff quefrency 1/(2 f0); unvoiced frames fall back to a
/// fixed default cutoff. Output is strictly positive.
pub fn estimate_envelope(
    clip: &AudioClip,
    f0: &PitchContour,
    cfg: &AnalysisConfig,
) -> Result<SpectralEnvelope> {
    cfg.check_grid(clip, f0)?;
    let width = cfg.window_samples();
    let hop = cfg.hop_samples() as isize;
    let window = hann(width);
    let window_sum: f64 = window.iter().sum();
    // Normalization putting a full-scale sine's peak bin at its amplitude squared.
    let power_scale = (2.0 / window_sum) * (2.0 / window_sum);

    let mut frames = Vec::with_capacity(f0.len());
    for k in 0..f0.len() {
        let seg = super::frame_segment(clip.samples(), k as isize * hop, width);
        let mut padded = vec![0.0; cfg.fft_size];
        for (p, (s, w)) in padded.iter_mut().zip(seg.iter().zip(&window)) {
            *p = s * w;
        }
        let spec = fft_real(&padded);
        let power: Vec<f64> =
            spec[..=cfg.fft_size / 2].iter().map(|c| c.norm_sqr() * power_scale).collect();

        let cutoff_f0 = if f0.is_voiced(k) { f0.f0[k] } else { DEFAULT_CUTOFF_F0 };
        let cutoff = cfg.sample_rate as f64 / (2.0 * cutoff_f0);
        frames.push(smooth_frame(&power, cutoff));
    }
    Ok(SpectralEnvelope { frames })
}

fn smooth_frame(power: &[f64], cutoff_quefrency: f64) -> Vec<f64> {
    let peak = power.iter().copied().fold(0.0, f64::max);
    if peak <= 0.0 {
        return vec![ENVELOPE_FLOOR; power.len()];
    }

    let log_power: Vec<f64> = power.iter().map(|&p| p.max(peak * ENVELOPE_FLOOR).ln()).collect();
    let mut ceps = cepstrum_of_log_spectrum(&log_power);
    let n = ceps.len();
    for (q, c) in ceps.iter_mut().enumerate() {
        // Symmetric quefrency distance from zero.
        let dist = q.min(n - q) as f64;
        *c *= lifter_gain(dist, cutoff_quefrency);
    }
    let spec: Vec<Complex<f64>> = ceps.into_iter().map(|v| Complex::new(v, 0.0)).collect();
    let smoothed = crate::spectrum::fft_of_real(&spec);

    let mut env: Vec<f64> = smoothed[..power.len()].iter().map(|c| c.re.exp()).collect();
    let env_peak = env.iter().copied().fold(0.0, f64::max);
    for e in env.iter_mut() {
        *e = e.max(env_peak * ENVELOPE_FLOOR);
    }
    env
}

/// Lifter with a cosine rolloff over the top quarter to curb Gibbs ripple.
fn lifter_gain(quefrency: f64, cutoff: f64) -> f64 {
    let knee = 0.75 * cutoff;
    if quefrency <= knee {
        1.0
    } else if quefrency < cutoff {
        0.5 * (1.0 + (std::f64::consts::PI * (quefrency - knee) / (cutoff - knee)).cos())
    } else {
        0.0
    }
}

// Smoothing needs the forward transform of an already-complex buffer; keep the
// helper here so spectrum.rs stays signal-in/signal-out.
#[allow(unused)]
fn unused(_: &[f64]) {
    let _ = mirror_half_spectrum;
}
