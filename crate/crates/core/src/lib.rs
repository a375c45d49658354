//! Simulator for controlled bidirectional teleportation of coherent-state
//! qubits over a five-mode cluster-type entangled coherent state.
//!
//! The state engine works exactly in the overcomplete coherent basis.
//! [`fock`] re-derives the same quantities in a truncated photon-number
//! basis and is used to arbitrate disagreements with the closed forms.

pub mod algebra;
pub mod closed_form;
pub mod error;
pub mod fock;
pub mod measurement;
pub mod optics;
pub mod protocol;
pub mod reference;
pub mod report;
pub mod scalar;

pub use algebra::{AlphaParams, CatBasis, CatCoeffs, CoherentTerm, Mode, MultimodeState};
pub use error::{Error, Result};
pub use measurement::PcOutcome;
pub use protocol::{CaseRecord, Category, Correction, DetectorPair, Parity, ProtocolParams, UnitaryOp};
pub use scalar::Real;

pub type Amplitude = num_complex::Complex64;
pub type State = MultimodeState<f64>;
pub type State32 = MultimodeState<f32>;
pub type Params = ProtocolParams<f64>;
pub type Params32 = ProtocolParams<f32>;
pub type Record = CaseRecord<f64>;
