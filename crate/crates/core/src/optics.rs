//! Linear optics acting term-wise on coherent superpositions.

use num_complex::Complex;

use crate::algebra::{CoherentTerm, Mode, MultimodeState};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Symmetric beam splitter fitted with its two phase shifters.
///
/// Net action on a coherent pair: `|a, b> -> |(a+b)/√2, (a-b)/√2>`, with the
/// sum written to `output_sum` and the difference to `output_diff`. The
/// output labels take the places of the input labels in the mode list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BeamSplitterSpec {
    pub input_a: Mode,
    pub input_b: Mode,
    pub output_sum: Mode,
    pub output_diff: Mode,
}

impl BeamSplitterSpec {
    pub fn new(input_a: Mode, input_b: Mode, output_sum: Mode, output_diff: Mode) -> Result<Self> {
        let labels = [input_a, input_b, output_sum, output_diff];
        for i in 0..4 {
            if labels[i + 1..].contains(&labels[i]) {
                return Err(Error::ModeMismatch(format!("beam splitter labels not distinct: {labels:?}")));
            }
        }
        Ok(Self { input_a, input_b, output_sum, output_diff })
    }
}

pub fn apply_bs_ps<T: Real>(s: &MultimodeState<T>, spec: &BeamSplitterSpec) -> Result<MultimodeState<T>> {
    let ia = s.mode_index(spec.input_a)?;
    let ib = s.mode_index(spec.input_b)?;
    for out in [spec.output_sum, spec.output_diff] {
        if s.modes().contains(&out) {
            return Err(Error::LabelCollision(out));
        }
    }
    let r = T::FRAC_1_SQRT_2();
    let mut modes = s.modes().to_vec();
    modes[ia] = spec.output_sum;
    modes[ib] = spec.output_diff;
    let terms = s
        .terms()
        .iter()
        .map(|t| {
            let (a, b) = (t.amps[ia], t.amps[ib]);
            let mut amps = t.amps.clone();
            amps[ia] = (a + b) * r;
            amps[ib] = (a - b) * r;
            CoherentTerm::new(t.coeff, amps)
        })
        .collect();
    MultimodeState::new(modes, terms)
}

/// Phase shift `|a> -> |e^{i phase} a>` on one mode.
pub fn apply_phase<T: Real>(s: &MultimodeState<T>, mode: Mode, phase: T) -> Result<MultimodeState<T>> {
    let i = s.mode_index(mode)?;
    let rot = Complex::from_polar(T::one(), phase);
    let terms = s
        .terms()
        .iter()
        .map(|t| {
            let mut amps = t.amps.clone();
            amps[i] = amps[i] * rot;
            CoherentTerm::new(t.coeff, amps)
        })
        .collect();
    MultimodeState::new(s.modes().to_vec(), terms)
}
