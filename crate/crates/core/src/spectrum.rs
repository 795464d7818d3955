//! FFT plumbing shared by the vocoder and the cepstral feature code.

use std::cell::RefCell;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan_forward(n: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n))
}

fn plan_inverse(n: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n))
}

/// Forward FFT of a real signal; returns the full complex spectrum.
pub(crate) fn fft_real(signal: &[f64]) -> Vec<Complex<f64>> {
    let mut buf: Vec<Complex<f64>> = signal.iter().map(|&v| Complex::new(v, 0.0)).collect();
    plan_forward(buf.len()).process(&mut buf);
    buf
}

/// Inverse FFT returning the real part, normalized by 1/n.
pub(crate) fn ifft_real(mut spectrum: Vec<Complex<f64>>) -> Vec<f64> {
    let n = spectrum.len();
    plan_inverse(n).process(&mut spectrum);
    spectrum.into_iter().map(|c| c.re / n as f64).collect()
}

pub(crate) fn fft_complex_inverse(spectrum: &mut [Complex<f64>]) {
    let n = spectrum.len();
    plan_inverse(n).process(spectrum);
    for c in spectrum.iter_mut() {
        *c /= n as f64;
    }
}

/// Periodic Hann window.
pub(crate) fn hann(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 0.5 - 0.5 * (std::f64::consts::TAU * i as f64 / n as f64).cos())
        .collect()
}

/// Even-symmetric extension of a half spectrum (len k+1) to full length 2k.
pub(crate) fn mirror_half_spectrum(half: &[f64]) -> Vec<f64> {
    let k = half.len() - 1;
    let mut full = Vec::with_capacity(2 * k);
    full.extend_from_slice(half);
    for m in 1..k {
        full.push(half[k - m]);
    }
    full
}

/// Real cepstrum of a (half) log spectrum: mirror, inverse-transform.
/// Output length is 2k for a half spectrum of k+1 bins.
pub(crate) fn cepstrum_of_log_spectrum(log_half: &[f64]) -> Vec<f64> {
    let full = mirror_half_spectrum(log_half);
    let spec: Vec<Complex<f64>> = full.iter().map(|&v| Complex::new(v, 0.0)).collect();
    ifft_real(spec)
}

/// Full complex spectrum (length 2k) of the minimum-phase filter whose
/// magnitude response is `mag_half` (k+1 bins). Derived by zeroing the
/// negative quefrencies of the log-magnitude cepstrum.
pub(crate) fn minimum_phase_spectrum(mag_half: &[f64]) -> Vec<Complex<f64>> {
    let log_half: Vec<f64> = mag_half.iter().map(|&m| m.max(1e-150).ln()).collect();
    let mut ceps = cepstrum_of_log_spectrum(&log_half);
    let n = ceps.len();
    for c in ceps.iter_mut().take(n / 2).skip(1) {
        *c *= 2.0;
    }
    for c in ceps.iter_mut().skip(n / 2 + 1) {
        *c = 0.0;
    }
    let mut buf: Vec<Complex<f64>> = ceps.into_iter().map(|v| Complex::new(v, 0.0)).collect();
    plan_forward(n).process(&mut buf);
    buf.into_iter().map(|c| c.exp()).collect()
}

/// Quadratic peak refinement from three equidistant samples around a maximum.
/// Returns the sub-sample offset in [-0.5, 0.5] and the interpolated peak value.
pub(crate) fn parabolic_peak(y_prev: f64, y_mid: f64, y_next: f64) -> (f64, f64) {
    let denom = y_prev - 2.0 * y_mid + y_next;
    if denom.abs() < 1e-30 {
        return (0.0, y_mid);
    }
    let delta = (0.5 * (y_prev - y_next) / denom).clamp(-0.5, 0.5);
    let peak = y_mid - 0.25 * (y_prev - y_next) * delta;
    (delta, peak)
}
