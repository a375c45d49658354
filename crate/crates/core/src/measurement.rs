//! Ideal photon counting on a single mode.
//!
//! Projectors act in closed form on coherent kets:
//!
//! | outcome | photon numbers | `P |b>`                              |
//! |---------|----------------|--------------------------------------|
//! | Vacuum  | {0}            | `e^{-|b|²/2} |0>`                    |
//! | Even    | {0, 2, 4, ..}  | `(|b> + |-b>)/2`                     |
//! | Odd     | {1, 3, 5, ..}  | `(|b> - |-b>)/2`                     |
//! | Nze     | {2, 4, 6, ..}  | `(|b> + |-b>)/2 - e^{-|b|²/2} |0>`   |

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::algebra::{CoherentTerm, Mode, MultimodeState};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PcOutcome {
    Vacuum,
    /// Non-zero even photon number.
    Nze,
    Odd,
    /// Parity-even, vacuum included.
    Even,
}

impl PcOutcome {
    /// Whether photon number `n` belongs to this outcome.
    pub fn contains(self, n: usize) -> bool {
        match self {
            PcOutcome::Vacuum => n == 0,
            PcOutcome::Nze => n > 0 && n % 2 == 0,
            PcOutcome::Odd => n % 2 == 1,
            PcOutcome::Even => n % 2 == 0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PcOutcome::Vacuum => "0",
            PcOutcome::Nze => "NZE",
            PcOutcome::Odd => "odd",
            PcOutcome::Even => "even",
        }
    }
}

impl fmt::Display for PcOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for PcOutcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" | "vacuum" | "VACUUM" => Ok(PcOutcome::Vacuum),
            "NZE" | "nze" => Ok(PcOutcome::Nze),
            "odd" | "ODD" => Ok(PcOutcome::Odd),
            "even" | "EVEN" => Ok(PcOutcome::Even),
            other => Err(Error::InvalidParameter(format!("unknown photon-count outcome {other:?}"))),
        }
    }
}

fn expand<T: Real>(b: Complex<T>, outcome: PcOutcome) -> Vec<(T, Complex<T>)> {
    let half = T::lit(0.5);
    let vac = (-b.norm_sqr() * half).exp();
    let zero = Complex::from(T::zero());
    match outcome {
        PcOutcome::Vacuum => vec![(vac, zero)],
        PcOutcome::Even => vec![(half, b), (half, -b)],
        PcOutcome::Odd => vec![(half, b), (-half, -b)],
        PcOutcome::Nze => vec![(half, b), (half, -b), (-vac, zero)],
    }
}

/// Apply the outcome projector to `mode`, keeping the mode. The result is
/// unnormalized and canonicalized.
pub fn project_mode<T: Real>(s: &MultimodeState<T>, mode: Mode, outcome: PcOutcome) -> Result<MultimodeState<T>> {
    let i = s.mode_index(mode)?;
    let mut terms = Vec::with_capacity(s.num_terms() * 3);
    for t in s.terms() {
        for (w, b) in expand(t.amps[i], outcome) {
            let mut amps = t.amps.clone();
            amps[i] = b;
            terms.push(CoherentTerm::new(t.coeff * w, amps));
        }
    }
    Ok(MultimodeState::new(s.modes().to_vec(), terms)?.canonical())
}

/// Outcome probability and the normalized state of the remaining modes.
#[derive(Clone, Debug, PartialEq)]
pub struct Measurement<T> {
    pub probability: T,
    pub state: MultimodeState<T>,
}

/// Measure one mode and return the conditional state of the others.
///
/// Requires the projected state to be a product across the
/// (measured mode, rest) cut: for every outcome but `Vacuum` the nonzero
/// amplitudes on `mode` must all be `±b` for one `b`.
pub fn measure<T: Real>(s: &MultimodeState<T>, mode: Mode, outcome: PcOutcome) -> Result<Measurement<T>> {
    let i = s.mode_index(mode)?;
    let rest_modes: Vec<Mode> = s.modes().iter().copied().filter(|&m| m != mode).collect();
    let half = T::lit(0.5);

    let (mode_norm_sqr, weights): (T, Vec<T>) = if outcome == PcOutcome::Vacuum {
        let w = s.terms().iter().map(|t| (-t.amps[i].norm_sqr() * half).exp()).collect();
        (T::one(), w)
    } else {
        let scale = |b: Complex<T>| T::factor_tol() * T::one().max(b.norm());
        let reference = s.terms().iter().map(|t| t.amps[i]).find(|b| b.norm() > T::factor_tol());
        match reference {
            None => {
                let w = if outcome == PcOutcome::Even { T::one() } else { T::zero() };
                (T::one(), vec![w; s.num_terms()])
            }
            Some(b0) => {
                let template = project_mode(&MultimodeState::coherent(mode, b0), mode, outcome)?;
                let mut w = Vec::with_capacity(s.num_terms());
                for t in s.terms() {
                    let b = t.amps[i];
                    let sign = if b.norm() <= T::factor_tol() {
                        if outcome == PcOutcome::Even {
                            return Err(Error::NotRankOne(mode));
                        }
                        T::zero()
                    } else if (b - b0).norm() <= scale(b0) {
                        T::one()
                    } else if (b + b0).norm() <= scale(b0) {
                        -T::one()
                    } else {
                        return Err(Error::NotRankOne(mode));
                    };
                    w.push(match outcome {
                        PcOutcome::Odd => sign,
                        _ => sign.abs(),
                    });
                }
                (template.norm_sqr(), w)
            }
        }
    };

    let terms = s
        .terms()
        .iter()
        .zip(&weights)
        .filter(|(_, &w)| w != T::zero())
        .map(|(t, &w)| {
            let amps = t.amps.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &a)| a).collect();
            CoherentTerm::new(t.coeff * w, amps)
        })
        .collect();
    let rest = MultimodeState::new(rest_modes, terms)?.canonical();
    let probability = mode_norm_sqr * rest.norm_sqr();
    if !(probability >= T::zero_tol()) {
        return Err(Error::ZeroProbability(probability.to_f64_lossy()));
    }
    Ok(Measurement { probability, state: rest.normalize()? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cat_state, AlphaParams, CatBasis};

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn odd_on_vacuum_is_zero() {
        let s = MultimodeState::coherent(Mode(0), c(0.0));
        assert!(project_mode(&s, Mode(0), PcOutcome::Odd).unwrap().is_zero());
        assert!(project_mode(&s, Mode(0), PcOutcome::Nze).unwrap().is_zero());
    }

    #[test]
    fn counter_probabilities_on_displaced_cat_amplitude() {
        // alpha^2 = 2, measured amplitude sqrt(2) alpha
        let alpha = AlphaParams::from_mean_photons(2.0f64).unwrap();
        let x = alpha.x();
        let s = MultimodeState::coherent(Mode(7), c(2f64.sqrt() * alpha.alpha()));
        let p = |o| project_mode(&s, Mode(7), o).unwrap().norm_sqr();
        assert!((p(PcOutcome::Vacuum) - x * x).abs() < 1e-15);
        assert!((p(PcOutcome::Vacuum) - (-4.0f64).exp()).abs() < 1e-15);
        assert!((p(PcOutcome::Odd) - (1.0 - x.powi(4)) / 2.0).abs() < 1e-14);
        assert!((p(PcOutcome::Nze) - (1.0 - x * x).powi(2) / 2.0).abs() < 1e-14);
        let total = p(PcOutcome::Vacuum) + p(PcOutcome::Nze) + p(PcOutcome::Odd);
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn parity_eigenstate_measures_with_certainty() {
        let alpha = AlphaParams::new(0.8f64).unwrap();
        let s =
            MultimodeState::coherent(Mode(0), alpha.amp()).tensor(&cat_state(&alpha, CatBasis::Plus, Mode(1))).unwrap();
        let m = measure(&s, Mode(1), PcOutcome::Even).unwrap();
        assert!((m.probability - 1.0).abs() < 1e-12);
        assert_eq!(m.state.modes(), &[Mode(0)]);
        assert!(
            (m.state.inner_product(&MultimodeState::coherent(Mode(0), alpha.amp())).unwrap().norm() - 1.0).abs()
                < 1e-12
        );
        assert!(matches!(measure(&s, Mode(1), PcOutcome::Odd), Err(Error::ZeroProbability(_))));
    }

    #[test]
    fn mixed_magnitudes_are_rejected() {
        let s =
            MultimodeState::coherent(Mode(0), c(1.0)).superpose(&MultimodeState::coherent(Mode(0), c(0.5))).unwrap();
        assert_eq!(measure(&s, Mode(0), PcOutcome::Odd), Err(Error::NotRankOne(Mode(0))));
        // vacuum projection is always a product
        assert!(measure(&s, Mode(0), PcOutcome::Vacuum).is_ok());
    }

    #[test]
    fn outcome_parsing() {
        assert_eq!("NZE".parse::<PcOutcome>().unwrap(), PcOutcome::Nze);
        assert_eq!("0".parse::<PcOutcome>().unwrap(), PcOutcome::Vacuum);
        assert!("two".parse::<PcOutcome>().is_err());
        assert!(PcOutcome::Nze.contains(4) && !PcOutcome::Nze.contains(0));
    }
}
