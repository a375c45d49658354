//! Finite superpositions of multimode coherent states.
//!
//! A [`MultimodeState`] is a list of [`CoherentTerm`]s, each a complex
//! coefficient times a product of coherent kets over an ordered set of
//! labelled modes. Everything the protocol needs (inner products, norms,
//! tensor products, cat-basis coordinates) is evaluated in closed form from
//! the coherent-state overlap, so no photon-number cutoff is involved.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Label of an optical mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mode(pub u32);

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `<a|b> = exp(-(|a|^2 + |b|^2)/2 + conj(a) b)`.
pub fn overlap<T: Real>(a: Complex<T>, b: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    (a.conj() * b - Complex::from((a.norm_sqr() + b.norm_sqr()) * half)).exp()
}

/// One product-of-coherent-states ket with its coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct CoherentTerm<T> {
    pub coeff: Complex<T>,
    /// One amplitude per mode of the owning state, in the state's mode order.
    pub amps: Vec<Complex<T>>,
}

impl<T: Real> CoherentTerm<T> {
    pub fn new(coeff: Complex<T>, amps: Vec<Complex<T>>) -> Self {
        Self { coeff, amps }
    }

    /// Product of single-mode overlaps, without the coefficients.
    fn ket_overlap(&self, other: &Self) -> Complex<T> {
        self.amps.iter().zip(&other.amps).fold(Complex::from(T::one()), |acc, (&a, &b)| acc * overlap(a, b))
    }
}

/// Linear combination of coherent product kets over labelled modes.
#[derive(Clone, Debug, PartialEq)]
pub struct MultimodeState<T> {
    modes: Vec<Mode>,
    terms: Vec<CoherentTerm<T>>,
}

fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

impl<T: Real> MultimodeState<T> {
    pub fn new(modes: Vec<Mode>, terms: Vec<CoherentTerm<T>>) -> Result<Self> {
        for (i, m) in modes.iter().enumerate() {
            if modes[..i].contains(m) {
                return Err(Error::ModeMismatch(format!("duplicate mode label {m}")));
            }
        }
        for t in &terms {
            if t.amps.len() != modes.len() {
                return Err(Error::ModeMismatch(format!(
                    "term has {} amplitudes for {} modes",
                    t.amps.len(),
                    modes.len()
                )));
            }
            if !is_finite(t.coeff) || !t.amps.iter().all(|&a| is_finite(a)) {
                return Err(Error::InvalidParameter("non-finite coefficient or amplitude".into()));
            }
        }
        Ok(Self { modes, terms })
    }

    /// The state with no terms on the given modes.
    pub fn zero(modes: Vec<Mode>) -> Self {
        Self { modes, terms: Vec::new() }
    }

    /// Single coherent state `|amp>` on `mode`.
    pub fn coherent(mode: Mode, amp: Complex<T>) -> Self {
        Self { modes: vec![mode], terms: vec![CoherentTerm::new(Complex::from(T::one()), vec![amp])] }
    }

    /// Single product ket with unit coefficient.
    pub fn product(modes: Vec<Mode>, amps: Vec<Complex<T>>) -> Result<Self> {
        Self::new(modes, vec![CoherentTerm::new(Complex::from(T::one()), amps)])
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn terms(&self) -> &[CoherentTerm<T>] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn num_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mode_index(&self, mode: Mode) -> Result<usize> {
        self.modes
            .iter()
            .position(|&m| m == mode)
            .ok_or_else(|| Error::ModeMismatch(format!("mode {mode} not in {:?}", self.modes)))
    }

    /// Same state with its modes listed in `order` (a permutation of the
    /// current labels).
    pub fn reordered(&self, order: &[Mode]) -> Result<Self> {
        if order.len() != self.modes.len() {
            return Err(Error::ModeMismatch(format!("{:?} vs {:?}", self.modes, order)));
        }
        let perm = order.iter().map(|&m| self.mode_index(m)).collect::<Result<Vec<_>>>()?;
        let terms =
            self.terms.iter().map(|t| CoherentTerm::new(t.coeff, perm.iter().map(|&i| t.amps[i]).collect())).collect();
        Ok(Self { modes: order.to_vec(), terms })
    }

    /// `<self|other>`. If `other` carries the same labels in a different
    /// order it is permuted first.
    pub fn inner_product(&self, other: &Self) -> Result<Complex<T>> {
        if self.modes != other.modes {
            let permuted = other.reordered(&self.modes)?;
            return self.inner_product(&permuted);
        }
        let mut acc = Complex::from(T::zero());
        for a in &self.terms {
            for b in &other.terms {
                acc += a.coeff.conj() * b.coeff * a.ket_overlap(b);
            }
        }
        Ok(acc)
    }

    pub fn norm_sqr(&self) -> T {
        let mut acc = T::zero();
        for (i, a) in self.terms.iter().enumerate() {
            acc += a.coeff.norm_sqr();
            for b in &self.terms[i + 1..] {
                let cross = a.coeff.conj() * b.coeff * a.ket_overlap(b);
                acc += cross.re + cross.re;
            }
        }
        acc.max(T::zero())
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm();
        if !(n >= T::zero_tol()) {
            return Err(Error::ZeroState(n.to_f64_lossy()));
        }
        Ok(self.scale(Complex::from(T::one() / n)))
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        let terms = self.terms.iter().map(|t| CoherentTerm::new(t.coeff * c, t.amps.clone())).collect();
        Self { modes: self.modes.clone(), terms }
    }

    /// Sum of two states on the same modes (terms concatenated, not merged).
    pub fn superpose(&self, other: &Self) -> Result<Self> {
        let other = if self.modes == other.modes { other.clone() } else { other.reordered(&self.modes)? };
        let mut terms = self.terms.clone();
        terms.extend(other.terms);
        Ok(Self { modes: self.modes.clone(), terms })
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if let Some(&m) = other.modes.iter().find(|m| self.modes.contains(m)) {
            return Err(Error::LabelCollision(m));
        }
        let mut modes = self.modes.clone();
        modes.extend_from_slice(&other.modes);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut amps = a.amps.clone();
                amps.extend_from_slice(&b.amps);
                terms.push(CoherentTerm::new(a.coeff * b.coeff, amps));
            }
        }
        Ok(Self { modes, terms })
    }

    /// Merge terms whose amplitude vectors agree within `merge_tol`
    /// (relative to the amplitude size), drop negligible coefficients and
    /// sort terms into canonical order.
    pub fn canonicalize(&self, merge_tol: T) -> Self {
        let mut merged: Vec<CoherentTerm<T>> = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            match merged.iter_mut().find(|m| amps_close(&m.amps, &t.amps, merge_tol)) {
                Some(m) => m.coeff += t.coeff,
                None => merged.push(t.clone()),
            }
        }
        let largest = self.terms.iter().map(|t| t.coeff.norm()).fold(T::zero(), T::max);
        let floor = T::zero_tol() * self.norm().max(largest);
        merged.retain(|t| t.coeff.norm() > floor);
        merged.sort_by(canonical_order);
        Self { modes: self.modes.clone(), terms: merged }
    }

    /// [`canonicalize`](Self::canonicalize) at the scalar type's default tolerance.
    pub fn canonical(&self) -> Self {
        self.canonicalize(T::merge_tol())
    }

    /// Rename one mode label.
    pub fn relabel(&self, from: Mode, to: Mode) -> Result<Self> {
        let idx = self.mode_index(from)?;
        if from != to && self.modes.contains(&to) {
            return Err(Error::LabelCollision(to));
        }
        let mut out = self.clone();
        out.modes[idx] = to;
        Ok(out)
    }

    pub(crate) fn from_parts_unchecked(modes: Vec<Mode>, terms: Vec<CoherentTerm<T>>) -> Self {
        Self { modes, terms }
    }
}

fn amps_close<T: Real>(a: &[Complex<T>], b: &[Complex<T>], tol: T) -> bool {
    a.iter().zip(b).all(|(&x, &y)| (x - y).norm() <= tol * T::one().max(x.norm()))
}

fn sign_rank<T: Real>(v: T) -> u8 {
    if v > T::merge_tol() {
        0
    } else if v < -T::merge_tol() {
        2
    } else {
        1
    }
}

// Sign pattern first (+ < 0 < -, real then imaginary part), then magnitudes,
// then raw components.
fn canonical_order<T: Real>(a: &CoherentTerm<T>, b: &CoherentTerm<T>) -> Ordering {
    let signs =
        |t: &CoherentTerm<T>| t.amps.iter().flat_map(|z| [sign_rank(z.re), sign_rank(z.im)]).collect::<Vec<_>>();
    signs(a)
        .cmp(&signs(b))
        .then_with(|| {
            for (x, y) in a.amps.iter().zip(&b.amps) {
                match x.norm().partial_cmp(&y.norm()) {
                    Some(Ordering::Equal) | None => continue,
                    Some(o) => return o,
                }
            }
            Ordering::Equal
        })
        .then_with(|| {
            for (x, y) in a.amps.iter().zip(&b.amps) {
                let o =
                    x.re.partial_cmp(&y.re)
                        .unwrap_or(Ordering::Equal)
                        .then(x.im.partial_cmp(&y.im).unwrap_or(Ordering::Equal));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
}

/// Base coherent amplitude and the derived overlap quantities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaParams<T> {
    alpha: T,
    x: T,
    x2: T,
    gamma: T,
    delta: T,
}

impl<T: Real> AlphaParams<T> {
    /// `alpha` must be real, finite and positive.
    pub fn new(alpha: T) -> Result<Self> {
        if !(alpha > T::zero()) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!("alpha must be > 0, got {alpha}")));
        }
        let a2 = alpha * alpha;
        let x = (-a2).exp();
        let x2 = (-(a2 + a2)).exp();
        let one = T::one();
        let gamma = ((one - x2) / (one + x2)).sqrt();
        let delta = ((one + x2) / (one - x2)).sqrt();
        Ok(Self { alpha, x, x2, gamma, delta })
    }

    /// Build from the mean photon number `|alpha|^2`.
    pub fn from_mean_photons(alpha2: T) -> Result<Self> {
        if !(alpha2 > T::zero()) {
            return Err(Error::InvalidParameter(format!("alpha^2 must be > 0, got {alpha2}")));
        }
        Self::new(alpha2.sqrt())
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn mean_photons(&self) -> T {
        self.alpha * self.alpha
    }

    /// `exp(-alpha^2)`, the vacuum overlap of `|sqrt(2) alpha>`.
    pub fn x(&self) -> T {
        self.x
    }

    /// `exp(-2 alpha^2) = <alpha|-alpha>`, evaluated directly.
    pub fn x2(&self) -> T {
        self.x2
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    pub fn amp(&self) -> Complex<T> {
        Complex::new(self.alpha, T::zero())
    }

    /// Normalisation `sqrt(2(1 ± x^2))` of the even (`Plus`) or odd cat.
    pub fn cat_norm(&self, which: CatBasis) -> T {
        let two = T::lit(2.0);
        match which {
            CatBasis::Plus => (two * (T::one() + self.x2)).sqrt(),
            CatBasis::Minus => (two * (T::one() - self.x2)).sqrt(),
        }
    }
}

/// Even (`Plus`) and odd (`Minus`) cat states `|±,alpha>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatBasis {
    Plus,
    Minus,
}

/// Coordinates of a single-mode state on `{|+,alpha>, |-,alpha>}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CatCoeffs<T> {
    pub plus: Complex<T>,
    pub minus: Complex<T>,
}

impl<T: Real> CatCoeffs<T> {
    pub fn new(plus: Complex<T>, minus: Complex<T>) -> Self {
        Self { plus, minus }
    }

    pub fn norm_sqr(&self) -> T {
        self.plus.norm_sqr() + self.minus.norm_sqr()
    }

    /// `<self|other>` in the orthonormal cat basis.
    pub fn dot(&self, other: &Self) -> Complex<T> {
        self.plus.conj() * other.plus + self.minus.conj() * other.minus
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self::new(self.plus * c, self.minus * c)
    }
}

pub fn cat_state<T: Real>(alpha: &AlphaParams<T>, which: CatBasis, mode: Mode) -> MultimodeState<T> {
    let n = T::one() / alpha.cat_norm(which);
    let sign = match which {
        CatBasis::Plus => n,
        CatBasis::Minus => -n,
    };
    MultimodeState::from_parts_unchecked(
        vec![mode],
        vec![
            CoherentTerm::new(Complex::from(n), vec![alpha.amp()]),
            CoherentTerm::new(Complex::from(sign), vec![-alpha.amp()]),
        ],
    )
}

fn check_pm_alpha<T: Real>(a: Complex<T>, alpha: &AlphaParams<T>) -> Result<()> {
    let tol = T::factor_tol() * T::one().max(alpha.alpha());
    if (a - alpha.amp()).norm() <= tol || (a + alpha.amp()).norm() <= tol {
        Ok(())
    } else {
        Err(Error::UnsupportedAmplitude(format!("{a}")))
    }
}

/// Cat-basis coordinates `(<+,alpha|s>, <-,alpha|s>)` of a single-mode state
/// whose amplitudes are all `±alpha`.
pub fn cat_coeffs<T: Real>(s: &MultimodeState<T>, alpha: &AlphaParams<T>) -> Result<CatCoeffs<T>> {
    if s.num_modes() != 1 {
        return Err(Error::ModeMismatch(format!("expected one mode, got {:?}", s.modes())));
    }
    for t in s.terms() {
        check_pm_alpha(t.amps[0], alpha)?;
    }
    let mode = s.modes()[0];
    let plus = cat_state(alpha, CatBasis::Plus, mode).inner_product(s)?;
    let minus = cat_state(alpha, CatBasis::Minus, mode).inner_product(s)?;
    Ok(CatCoeffs::new(plus, minus))
}

/// Two-term coherent representation of `c.plus |+,alpha> + c.minus |-,alpha>`.
pub fn from_cat_coeffs<T: Real>(c: &CatCoeffs<T>, alpha: &AlphaParams<T>, mode: Mode) -> MultimodeState<T> {
    let p = c.plus / alpha.cat_norm(CatBasis::Plus);
    let m = c.minus / alpha.cat_norm(CatBasis::Minus);
    MultimodeState::from_parts_unchecked(
        vec![mode],
        vec![CoherentTerm::new(p + m, vec![alpha.amp()]), CoherentTerm::new(p - m, vec![-alpha.amp()])],
    )
}

/// Split a two-mode state on `±alpha` amplitudes into a product of
/// single-mode states, one per mode in the state's mode order.
///
/// The factors are not individually normalized; their tensor product
/// reproduces `s`.
pub fn factorize_two_mode_product<T: Real>(
    s: &MultimodeState<T>,
    alpha: &AlphaParams<T>,
) -> Result<(MultimodeState<T>, MultimodeState<T>)> {
    if s.num_modes() != 2 {
        return Err(Error::ModeMismatch(format!("expected two modes, got {:?}", s.modes())));
    }
    let (ma, mb) = (s.modes()[0], s.modes()[1]);
    // m[k][l] = (<k| ⊗ <l|) s in the cat basis
    let mut m = [[Complex::from(T::zero()); 2]; 2];
    for t in s.terms() {
        let ca = cat_coeffs(&MultimodeState::coherent(ma, t.amps[0]), alpha)?;
        let cb = cat_coeffs(&MultimodeState::coherent(mb, t.amps[1]), alpha)?;
        let (ka, kb) = ([ca.plus, ca.minus], [cb.plus, cb.minus]);
        for k in 0..2 {
            for l in 0..2 {
                m[k][l] += t.coeff * ka[k] * kb[l];
            }
        }
    }
    let fro2: T = m.iter().flatten().map(|z| z.norm_sqr()).sum();
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).norm();
    let threshold = T::factor_tol() * fro2;
    if det >= threshold && fro2 > T::zero() {
        return Err(Error::Entangled { det: det.to_f64_lossy(), threshold: threshold.to_f64_lossy() });
    }
    if fro2 <= T::zero() {
        return Err(Error::ZeroState(0.0));
    }
    let (mut bi, mut bj) = (0, 0);
    for i in 0..2 {
        for j in 0..2 {
            if m[i][j].norm_sqr() > m[bi][bj].norm_sqr() {
                bi = i;
                bj = j;
            }
        }
    }
    let left = CatCoeffs::new(m[0][bj], m[1][bj]);
    let pivot = m[bi][bj];
    let right = CatCoeffs::new(m[bi][0] / pivot, m[bi][1] / pivot);
    Ok((from_cat_coeffs(&left, alpha, ma), from_cat_coeffs(&right, alpha, mb)))
}
