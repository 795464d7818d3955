use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unsupported wav encoding in {path}: {detail}")]
    UnsupportedWav { path: PathBuf, detail: String },

    #[error("malformed wav file {path}: {detail}")]
    MalformedWav { path: PathBuf, detail: String },

    #[error("empty audio clip")]
    EmptyClip,

    #[error("invalid sample rate {0}")]
    InvalidSampleRate(u32),

    #[error("clip of {samples} samples is shorter than one analysis window ({window} samples)")]
    ClipTooShort { samples: usize, window: usize },

    #[error("invalid analysis config: {0}")]
    InvalidConfig(String),

    #[error("frame count mismatch: expected {expected}, got {got}")]
    FrameCountMismatch { expected: usize, got: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("voiced f0 {f0} Hz outside (0, {nyquist}) Hz")]
    F0OutOfRange { f0: f64, nyquist: f64 },

    #[error("spectral envelope entry must be positive, found {value} at frame {frame}, bin {bin}")]
    NonPositiveEnvelope { frame: usize, bin: usize, value: f64 },

    #[error("feature dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("empty feature sequence")]
    EmptySequence,

    #[error("subspace dimension {d} exceeds rank bound {bound}")]
    SubspaceTooLarge { d: usize, bound: usize },

    #[error("need at least {min} aligned rows, got {got}")]
    TooFewRows { min: usize, got: usize },

    #[error("warp path invalid: {0}")]
    InvalidPath(String),

    #[error("warp path does not fit sequences of length {n} and {m}")]
    PathShapeMismatch { n: usize, m: usize },

    #[error("empty pitch contour")]
    EmptyContour,

    #[error("contour csv {path}, line {line}: {detail}")]
    ContourCsv { path: PathBuf, line: usize, detail: String },

    #[error("reference contour has no voiced frame; pitch metrics undefined")]
    NoVoicedReference,

    #[error("reference contour has no unvoiced frame; voicing false alarm undefined")]
    NoUnvoicedReference,

    #[error("contour has no frames")]
    NoFrames,

    #[error("nonpositive frequency {0} Hz has no cents value")]
    NonPositiveFrequency(f64),

    #[error("comparison csv {path}, line {line}: {detail}")]
    ComparisonCsv { path: PathBuf, line: usize, detail: String },

    #[error("invalid comparison matrix: {0}")]
    InvalidComparisons(String),

    #[error("comparison graph is disconnected; scores are not jointly identifiable")]
    DisconnectedGraph,

    #[error("scale optimizer did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("correlation needs at least 3 samples, got {0}")]
    TooFewSamples(usize),

    #[error("correlation undefined for constant input")]
    ConstantInput,

    #[error("input lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
