//! Crate-wide error type.

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum QlaError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite amplitude at site ({x}, {y}) component {component}")]
    NonFiniteAmplitude { x: usize, y: usize, component: usize },

    #[error("non-finite field detected at step {step}")]
    NonFiniteField { step: u64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("medium geometry out of bounds: {0}")]
    GeometryOutOfBounds(String),

    #[error("invalid medium: {0}")]
    InvalidMedium(String),

    #[error("pulse overlaps non-vacuum region ({0})")]
    PulseInMedium(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("config parse error: {0}")]
    ConfigParse(String),

    #[error("dissipation rates must be positive, got {0}")]
    NonPositiveRate(f64),

    #[error("dissipative rank {r} exceeds dimension {d}")]
    RankExceedsDimension { r: usize, d: usize },

    #[error("dilation unitarity residual {residual:.3e} exceeds 1e-12")]
    DilationNotUnitary { residual: f64 },

    #[error("measurement branch unrecoverable: p0 = {p0:.3e}")]
    UnrecoverableBranch { p0: f64 },

    #[error("not Hermitian: residual {0:.3e}")]
    NotHermitian(f64),

    #[error("snapshot format error in {path}: {reason}")]
    SnapshotFormat { path: PathBuf, reason: String },

    #[error("snapshot version {found} unsupported (expected {expected})")]
    SnapshotVersion { found: u32, expected: u32 },

    #[error("snapshot checksum mismatch in {path}: header {expected:#010x}, computed {actual:#010x}")]
    ChecksumMismatch { path: PathBuf, expected: u32, actual: u32 },

    #[error("manifest inconsistent: {0}")]
    ManifestInconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, QlaError>;
