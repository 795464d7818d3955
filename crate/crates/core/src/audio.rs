//! WAV audio I/O and resampling.
//!
//! Everything downstream works on mono clips at [`PIPELINE_RATE`] (16 kHz);
//! [`prepare`] brings an arbitrary decoded clip onto that rate.

use std::path::Path;

use crate::{Error, Result};

/// Working sample rate of the correction pipeline, Hz.
pub const PIPELINE_RATE: u32 = 16_000;

/// Mono audio buffer with its sample rate.
///
/// Samples are amplitudes in `[-1.0, 1.0]`. Clips are immutable values;
/// every operation that changes audio returns a new clip.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioClip {
    samples: Vec<f64>,
    sample_rate: u32,
}

impl AudioClip {
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Result<Self> {
        if sample_rate == 0 {
            return Err(Error::InvalidSampleRate(sample_rate));
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::NonFinite("audio samples"));
        }
        Ok(Self { samples, sample_rate })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }
}

/// Decodes a WAV file to a mono clip at the file's native rate.
///
/// Accepts 16-bit PCM, 24-bit PCM and 32-bit float, 1 or 2 channels.
/// Stereo is downmixed by the per-sample arithmetic mean of the channels.
pub fn load_wav(path: impl AsRef<Path>) -> Result<AudioClip> {
    let path = path.as_ref();
    let to_err = |e: hound::Error| match e {
        hound::Error::IoError(source) => Error::Io { path: path.into(), source },
        hound::Error::Unsupported => Error::UnsupportedWav {
            path: path.into(),
            detail: "unsupported container feature (compressed or non-PCM encoding?)".into(),
        },
        other => Error::MalformedWav { path: path.into(), detail: other.to_string() },
    };
    let mut reader = hound::WavReader::open(path).map_err(to_err)?;
    let spec = reader.spec();
    if spec.channels == 0 || spec.channels > 2 {
        return Err(Error::UnsupportedWav {
            path: path.into(),
            detail: format!("{} channels (expected 1 or 2)", spec.channels),
        });
    }

    let interleaved: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (hound::SampleFormat::Float, 32) => reader
            .samples::<f32>()
            .map(|s| s.map(f64::from).map_err(to_err))
            .collect::<Result<_>>()?,
        (hound::SampleFormat::Int, 16) => reader
            .samples::<i16>()
            .map(|s| s.map(|v| f64::from(v) / 32768.0).map_err(to_err))
            .collect::<Result<_>>()?,
        (hound::SampleFormat::Int, 24) => reader
            .samples::<i32>()
            .map(|s| s.map(|v| f64::from(v) / 8_388_608.0).map_err(to_err))
            .collect::<Result<_>>()?,
        (format, bits) => {
            return Err(Error::UnsupportedWav {
                path: path.into(),
                detail: format!("{bits}-bit {format:?} samples"),
            })
        }
    };

    let mono = match spec.channels {
        1 => interleaved,
        _ => interleaved.chunks_exact(2).map(|lr| (lr[0] + lr[1]) / 2.0).collect(),
    };
    if mono.iter().any(|s| !s.is_finite()) {
        return Err(Error::MalformedWav {
            path: path.into(),
            detail: "non-finite sample value".into(),
        });
    }
    AudioClip::new(mono, spec.sample_rate)
}

/// Writes a clip as 16-bit PCM mono WAV.
///
/// Values outside `[-1, 1]` are clamped at encode time (decode never clamps,
/// so analysis of overshooting synthesis output stays faithful in memory).
pub fn save_wav(clip: &AudioClip, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let to_err = |e: hound::Error| match e {
        hound::Error::IoError(source) => Error::Io { path: path.into(), source },
        other => Error::MalformedWav { path: path.into(), detail: other.to_string() },
    };
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: clip.sample_rate,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut writer = hound::WavWriter::create(path, spec).map_err(to_err)?;
    for &s in &clip.samples {
        let word = (s.clamp(-1.0, 1.0) * 32768.0).round().clamp(-32768.0, 32767.0) as i16;
        writer.write_sample(word).map_err(to_err)?;
    }
    writer.finalize().map_err(to_err)
}

/// Resamples a clip to `target_rate` with a band-limited windowed-sinc
/// interpolator (Kaiser window, 64 taps per output sample).
///
/// Output length is `round(len * target_rate / source_rate)`. Resampling to
/// the source rate returns the samples bit-identically.
pub fn resample(clip: &AudioClip, target_rate: u32) -> Result<AudioClip> {
    if target_rate == 0 {
        return Err(Error::InvalidSampleRate(target_rate));
    }
    if clip.is_empty() {
        return Err(Error::EmptyClip);
    }
    if target_rate == clip.sample_rate {
        return Ok(clip.clone());
    }

    let src = &clip.samples;
    let ratio = target_rate as f64 / clip.sample_rate as f64;
    let out_len = (src.len() as f64 * ratio).round() as usize;
    // When downsampling, shrink the sinc cutoff to the target Nyquist.
    let cutoff = ratio.min(1.0);
    const HALF_TAPS: i64 = 32;
    const KAISER_BETA: f64 = 10.0;

    let mut out = Vec::with_capacity(out_len);
    for n in 0..out_len {
        let t = n as f64 / ratio;
        let base = t.floor() as i64;
        let mut acc = 0.0;
        let mut norm = 0.0;
        for j in (base - HALF_TAPS + 1)..=(base + HALF_TAPS) {
            let x = j as f64 - t;
            let w = kaiser(x / HALF_TAPS as f64, KAISER_BETA);
            let h = cutoff * sinc(cutoff * x) * w;
            norm += h;
            if j >= 0 && (j as usize) < src.len() {
                acc += h * src[j as usize];
            }
        }
        out.push(acc / norm);
    }
    AudioClip::new(out, target_rate)
}

/// Resamples to the pipeline's 16 kHz working rate.
pub fn prepare(clip: &AudioClip) -> Result<AudioClip> {
    resample(clip, PIPELINE_RATE)
}

/// Normalized sinc, sin(pi x) / (pi x).
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        1.0
    } else {
        let px = std::f64::consts::PI * x;
        px.sin() / px
    }
}

/// Kaiser window on r in [-1, 1].
fn kaiser(r: f64, beta: f64) -> f64 {
    if r.abs() > 1.0 {
        return 0.0;
    }
    bessel_i0(beta * (1.0 - r * r).sqrt()) / bessel_i0(beta)
}

/// Modified Bessel function of the first kind, order zero (power series).
fn bessel_i0(x: f64) -> f64 {
    let half = x / 2.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=30 {
        term *= (half / k as f64) * (half / k as f64);
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    fn sine(freq: f64, amp: f64, rate: u32, secs: f64) -> AudioClip {
        let n = (secs * rate as f64).round() as usize;
        let samples = (0..n).map(|i| amp * (TAU * freq * i as f64 / rate as f64).sin()).collect();
        AudioClip::new(samples, rate).unwrap()
    }

    fn write_pcm16(path: &Path, channels: u16, rate: u32, words: &[i16]) {
        let spec = hound::WavSpec {
            channels,
            sample_rate: rate,
            bits_per_sample: 16,
            sample_format: hound::SampleFormat::Int,
        };
        let mut w = hound::WavWriter::create(path, spec).unwrap();
        for &word in words {
            w.write_sample(word).unwrap();
        }
        w.finalize().unwrap();
    }

    #[test]
    fn identity_decode_of_mono_pcm16_sine() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sine.wav");
        let words: Vec<i16> = (0..44_100)
            .map(|i| ((TAU * 440.0 * i as f64 / 44_100.0).sin() * 16_000.0).round() as i16)
            .collect();
        write_pcm16(&path, 1, 44_100, &words);

        let clip = load_wav(&path).unwrap();
        assert_eq!(clip.len(), 44_100);
        assert_eq!(clip.sample_rate(), 44_100);
    }

    #[test]
    fn symmetric_stereo_downmixes_to_silence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("stereo.wav");
        let mut words = Vec::new();
        for _ in 0..100 {
            words.push(16_384i16); // 0.5
            words.push(-16_384i16); // -0.5
        }
        write_pcm16(&path, 2, 48_000, &words);

        let clip = load_wav(&path).unwrap();
        assert_eq!(clip.len(), 100);
        assert!(clip.samples().iter().all(|&s| s == 0.0));
    }

    #[test]
    fn pcm16_word_scales_by_one_over_32768() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("quad.wav");
        write_pcm16(&path, 1, 16_000, &[16_384, -16_384, 32_767, -32_768]);

        let clip = load_wav(&path).unwrap();
        assert!((clip.samples()[0] - 0.5).abs() < 1e-4);
        assert!((clip.samples()[1] + 0.5).abs() < 1e-4);
        assert!((clip.samples()[2] - 32_767.0 / 32_768.0).abs() < 1e-9);
        assert!((clip.samples()[3] + 1.0).abs() < 1e-9);
    }

    #[test]
    fn downmix_is_linear_in_the_channels() {
        let dir = tempfile::tempdir().unwrap();
        let mono_path = dir.path().join("mono.wav");
        let stereo_path = dir.path().join("dup.wav");
        let words: Vec<i16> =
            (0..500).map(|i| ((TAU * 300.0 * i as f64 / 8000.0).sin() * 12_000.0) as i16).collect();
        write_pcm16(&mono_path, 1, 8000, &words);
        let dup: Vec<i16> = words.iter().flat_map(|&w| [w, w]).collect();
        write_pcm16(&stereo_path, 2, 8000, &dup);

        assert_eq!(load_wav(&mono_path).unwrap(), load_wav(&stereo_path).unwrap());
    }

    #[test]
    fn float32_decode_supported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f32.wav");
        let spec = hound::WavSpec {
            channels: 1,
            sample_rate: 22_050,
            bits_per_sample: 32,
            sample_format: hound::SampleFormat::Float,
        };
        let mut w = hound::WavWriter::create(&path, spec).unwrap();
        for v in [0.25f32, -0.75, 1.0] {
            w.write_sample(v).unwrap();
        }
        w.finalize().unwrap();

        let clip = load_wav(&path).unwrap();
        assert_eq!(clip.samples(), &[0.25, -0.75, 1.0]);
    }

    #[test]
    fn missing_file_reports_path() {
        let err = load_wav("/nonexistent/clip.wav").unwrap_err();
        assert!(err.to_string().contains("/nonexistent/clip.wav"));
    }

    #[test]
    fn unsupported_bit_depth_reports_property() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pcm8.wav");
        let spec = hound::WavSpec {
            channels: 1,
            sample_rate: 8000,
            bits_per_sample: 8,
            sample_format: hound::SampleFormat::Int,
        };
        let mut w = hound::WavWriter::create(&path, spec).unwrap();
        for _ in 0..4 {
            w.write_sample(0i8).unwrap();
        }
        w.finalize().unwrap();

        let err = load_wav(&path).unwrap_err();
        assert!(err.to_string().contains("8-bit"), "got: {err}");
    }

    #[test]
    fn resample_to_same_rate_is_bit_identical() {
        let clip = sine(440.0, 0.8, 16_000, 0.25);
        let out = resample(&clip, 16_000).unwrap();
        assert_eq!(out, clip);
    }

    #[test]
    fn resample_length_follows_rounding_formula() {
        let clip = sine(440.0, 0.5, 44_100, 0.5);
        assert_eq!(clip.len(), 22_050);
        let out = resample(&clip, 16_000).unwrap();
        assert_eq!(out.len(), 8000);
    }

    #[test]
    fn resample_preserves_a_1khz_tone() {
        let clip = sine(1000.0, 0.8, 48_000, 1.0);
        let out = resample(&clip, 16_000).unwrap();
        assert_eq!(out.sample_rate(), 16_000);
        assert_eq!(out.len(), 16_000);

        // Inspect the spectrum with an FFT independent of the resampler.
        use rustfft::{num_complex::Complex, FftPlanner};
        let mut buf: Vec<Complex<f64>> =
            out.samples().iter().map(|&s| Complex::new(s, 0.0)).collect();
        FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
        let half = buf.len() / 2;
        let peak_bin = (1..half).max_by(|&a, &b| buf[a].norm().total_cmp(&buf[b].norm())).unwrap();
        // 16000 samples at 16 kHz puts 1 kHz exactly on bin 1000.
        assert_eq!(peak_bin, 1000);
        let amp = 2.0 * buf[peak_bin].norm() / buf.len() as f64;
        assert!((amp - 0.8).abs() < 0.008, "amplitude {amp}");
    }

    #[test]
    fn resample_empty_clip_is_an_error() {
        let clip = AudioClip::new(vec![], 16_000).unwrap();
        assert!(matches!(resample(&clip, 8000), Err(Error::EmptyClip)));
    }

    #[test]
    fn save_all_zero_clip_writes_zero_data_chunk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("zero.wav");
        let clip = AudioClip::new(vec![0.0; 64], 16_000).unwrap();
        save_wav(&clip, &path).unwrap();

        let bytes = std::fs::read(&path).unwrap();
        let pos = bytes.windows(4).position(|w| w == b"data").unwrap();
        let data = &bytes[pos + 8..];
        assert_eq!(data.len(), 128);
        assert!(data.iter().all(|&b| b == 0));
    }

    #[test]
    fn encode_clamps_full_scale_to_32767() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("hot.wav");
        let clip = AudioClip::new(vec![1.0, -1.0, 0.5, 1.7], 16_000).unwrap();
        save_wav(&clip, &path).unwrap();

        let mut r = hound::WavReader::open(&path).unwrap();
        let words: Vec<i16> = r.samples::<i16>().map(|s| s.unwrap()).collect();
        assert_eq!(words, vec![32_767, -32_768, 16_384, 32_767]);
    }

    #[test]
    fn unwritable_path_is_an_error() {
        let clip = AudioClip::new(vec![0.0; 4], 16_000).unwrap();
        assert!(save_wav(&clip, "/nonexistent/dir/out.wav").is_err());
    }

    proptest! {
        #[test]
        fn save_load_round_trip_within_one_quantum(
            samples in proptest::collection::vec(-1.0f64..=1.0, 1..200)
        ) {
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("rt.wav");
            let clip = AudioClip::new(samples, 16_000).unwrap();
            save_wav(&clip, &path).unwrap();
            let back = load_wav(&path).unwrap();
            prop_assert_eq!(back.len(), clip.len());
            for (a, b) in clip.samples().iter().zip(back.samples()) {
                prop_assert!((a - b).abs() <= 1.0 / 32_768.0);
            }
        }
    }
}
