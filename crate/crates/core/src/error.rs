use thiserror::Error;

use crate::algebra::Mode;

/// Errors raised by the engine and the Fock oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("MODE_MISMATCH: {0}")]
    ModeMismatch(String),
    #[error("LABEL_COLLISION: mode {0} present in both factors")]
    LabelCollision(Mode),
    #[error("ZERO_STATE: norm {0:e} below threshold")]
    ZeroState(f64),
    #[error("UNSUPPORTED_AMPLITUDE: amplitude {0} is not ±alpha")]
    UnsupportedAmplitude(String),
    #[error("ENTANGLED: |det| = {det:e} exceeds rank-one threshold {threshold:e}")]
    Entangled { det: f64, threshold: f64 },
    #[error("NOT_RANK_ONE: mode {0} carries amplitudes of different magnitude or phase")]
    NotRankOne(Mode),
    #[error("ZERO_PROBABILITY: outcome probability {0:e}")]
    ZeroProbability(f64),
    #[error("CUTOFF_TOO_SMALL: n_max = {n_max} leaves truncation defect {defect:e}")]
    CutoffTooSmall { n_max: usize, defect: f64 },
    #[error("INVALID_PARAMETER: {0}")]
    InvalidParameter(String),
    #[error("REFERENCE_TABLE: {0}")]
    ReferenceTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
