//! F0 estimation from the normalized autocorrelation of each frame.

use super::{AnalysisConfig, PitchContour};
use crate::audio::AudioClip;
use crate::spectrum::parabolic_peak;
use crate::Result;

/// Estimates the F0 contour, one value per hop, frame k centered at k * hop.
///
/// Per frame the normalized autocorrelation is scanned over the candidate lag
/// range; among near-maximal local peaks the shortest lag wins (suppresses
/// sub-octave picks), then parabolic interpolation refines the lag to a
/// continuous value. A frame is unvoiced only when the refined peak clarity
/// falls below `voicing_threshold`.
pub fn estimate_f0(clip: &AudioClip, cfg: &AnalysisConfig) -> Result<PitchContour> {
    cfg.check_clip(clip)?;
    let hop = cfg.hop_samples() as isize;
    let width = cfg.window_samples();
    let n_frames = cfg.frame_count(clip.len());
    let min_lag = cfg.min_lag();
    let max_lag = cfg.max_lag();

    let mut f0 = Vec::with_capacity(n_frames);
    for k in 0..n_frames {
        let seg = super::frame_segment(clip.samples(), k as isize * hop, width);
        f0.push(frame_f0(&seg, min_lag, max_lag, cfg));
    }
    Ok(PitchContour::new(cfg.hop, f0))
}

fn frame_f0(seg: &[f64], min_lag: usize, max_lag: usize, cfg: &AnalysisConfig) -> f64 {
    let base_len = seg.len() - max_lag - 1;

    // Prefix sums of squared samples give each lag's energy in O(1).
    let mut sq_prefix = Vec::with_capacity(seg.len() + 1);
    sq_prefix.push(0.0);
    for &s in seg {
        sq_prefix.push(sq_prefix.last().unwrap() + s * s);
    }
    let base_energy = sq_prefix[base_len];
    if base_energy <= 0.0 {
        return 0.0;
    }

    let ncc: Vec<f64> = (min_lag..=max_lag)
        .map(|lag| {
            let lag_energy = sq_prefix[lag + base_len] - sq_prefix[lag];
            if lag_energy <= 0.0 {
                return 0.0;
            }
            let dot: f64 = (0..base_len).map(|t| seg[t] * seg[t + lag]).sum();
            dot / (base_energy * lag_energy).sqrt()
        })
        .collect();

    let best = ncc.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if best <= 0.0 {
        return 0.0;
    }

    // Shortest local maximum within 5% of the global peak; near-equal peaks
    // at lag multiples would otherwise drag the estimate an octave down.
    let mut pick = None;
    for i in 1..ncc.len().saturating_sub(1) {
        if ncc[i] >= ncc[i - 1] && ncc[i] >= ncc[i + 1] && ncc[i] >= 0.95 * best {
            pick = Some(i);
            break;
        }
    }

    let (lag_refined, clarity) = match pick {
        Some(i) => {
            let (delta, peak) = parabolic_peak(ncc[i - 1], ncc[i], ncc[i + 1]);
            ((min_lag + i) as f64 + delta, peak)
        }
        None => {
            // Peak sits on the range edge; use it without refinement.
            let i = ncc.iter().position(|&v| v == best).unwrap();
            ((min_lag + i) as f64, best)
        }
    };

    if clarity < cfg.voicing_threshold {
        return 0.0;
    }
    (cfg.sample_rate as f64 / lag_refined).clamp(cfg.f0_floor, cfg.f0_ceil)
}
