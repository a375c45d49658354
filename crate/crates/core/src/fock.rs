//! Truncated photon-number basis: an independent reference for the
//! coherent-basis engine.
//!
//! States are dense tensors over `(n_max + 1)^k` for `k` modes. The
//! protocol is never held as one seven-mode tensor. Each resource term
//! enters Alice's and Bob's beam splitters separately as a two-mode state,
//! and the case probability and reduced output states are assembled from
//! the resulting 4×4 overlap kernels.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::algebra::{Mode, MultimodeState};
use crate::closed_form::Direction;
use crate::error::{Error, Result};
use crate::measurement::PcOutcome;
use crate::optics::BeamSplitterSpec;
use crate::protocol::{
    case_by_id, case_layout, correction_policy, CaseSpec, Correction, ProtocolParams, UnitaryOp, BS_ALICE, BS_BOB,
    CLUSTER_SIGNS,
};
use crate::scalar::Real;

pub const DEFAULT_N_MAX: usize = 40;
/// Largest coherent amplitude the oracle is asked to judge.
pub const MAX_ORACLE_ALPHA: f64 = 1.5;
/// Agreement threshold for [`adjudicate`], before the truncation error bar.
pub const ORACLE_TOL: f64 = 1e-8;

/// Largest truncation defect accepted for a coherent vector.
pub fn defect_limit<T: Real>() -> T {
    T::lit(1e-10).max(T::epsilon() * T::lit(1e3))
}

/// Dense amplitudes over the truncated product basis. The first mode is the
/// slowest-varying index.
#[derive(Clone, Debug, PartialEq)]
pub struct FockState<T> {
    modes: Vec<Mode>,
    n_max: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> FockState<T> {
    pub fn vacuum(modes: Vec<Mode>, n_max: usize) -> Self {
        let mut amps = vec![Complex::from(T::zero()); (n_max + 1).pow(modes.len() as u32)];
        amps[0] = Complex::from(T::one());
        Self { modes, n_max, amps }
    }

    pub fn from_amplitudes(modes: Vec<Mode>, n_max: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        if amps.len() != (n_max + 1).pow(modes.len() as u32) {
            return Err(Error::ModeMismatch(format!(
                "{} amplitudes for {} modes at n_max {n_max}",
                amps.len(),
                modes.len()
            )));
        }
        Ok(Self { modes, n_max, amps })
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    fn stride(&self, i: usize) -> usize {
        self.dim().pow((self.modes.len() - 1 - i) as u32)
    }

    fn index_of(&self, mode: Mode) -> Result<usize> {
        self.modes
            .iter()
            .position(|&m| m == mode)
            .ok_or_else(|| Error::ModeMismatch(format!("mode {mode} not in {:?}", self.modes)))
    }

    /// Photon number of mode `i` in flat basis index `flat`.
    fn occupation(&self, flat: usize, i: usize) -> usize {
        (flat / self.stride(i)) % self.dim()
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).fold(T::zero(), |s, v| s + v)
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self { amps: self.amps.iter().map(|&a| a * c).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self { amps: self.amps.iter().zip(&other.amps).map(|(&a, &b)| a + b).collect(), ..self.clone() })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.modes != other.modes || self.n_max != other.n_max {
            return Err(Error::ModeMismatch(format!(
                "{:?}@{} vs {:?}@{}",
                self.modes, self.n_max, other.modes, other.n_max
            )));
        }
        Ok(())
    }

    /// `<self|other>`; both states must list the same modes in the same order.
    pub fn inner_product(&self, other: &Self) -> Result<Complex<T>> {
        self.check_compatible(other)?;
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).fold(Complex::from(T::zero()), |s, v| s + v))
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.n_max != other.n_max {
            return Err(Error::ModeMismatch(format!("cutoffs {} and {}", self.n_max, other.n_max)));
        }
        if let Some(&m) = other.modes.iter().find(|m| self.modes.contains(m)) {
            return Err(Error::LabelCollision(m));
        }
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for &a in &self.amps {
            amps.extend(other.amps.iter().map(|&b| a * b));
        }
        let mut modes = self.modes.clone();
        modes.extend_from_slice(&other.modes);
        Ok(Self { modes, n_max: self.n_max, amps })
    }

    /// Expand a coherent superposition. Fails if any amplitude needs more
    /// than `n_max` photons.
    pub fn from_multimode(s: &MultimodeState<T>, n_max: usize) -> Result<Self> {
        let mut out = Self {
            modes: s.modes().to_vec(),
            n_max,
            amps: vec![Complex::from(T::zero()); (n_max + 1).pow(s.num_modes() as u32)],
        };
        for t in s.terms() {
            let mut v: Option<Self> = None;
            for (&m, &a) in s.modes().iter().zip(&t.amps) {
                let c = coherent_fock(a, n_max)?.relabeled(m);
                v = Some(match v {
                    None => c,
                    Some(acc) => acc.tensor(&c)?,
                });
            }
            let v = v.unwrap_or_else(|| Self::vacuum(Vec::new(), n_max));
            out = out.add(&v.scale(t.coeff))?;
        }
        Ok(out)
    }

    fn relabeled(mut self, mode: Mode) -> Self {
        if self.modes.len() == 1 {
            self.modes[0] = mode;
        }
        self
    }
}

/// `e^{-|a|^2/2} Σ a^n/√n! |n>` up to `n_max`, by running recurrence.
pub fn coherent_fock<T: Real>(a: Complex<T>, n_max: usize) -> Result<FockState<T>> {
    let mut amps = Vec::with_capacity(n_max + 1);
    let mut c = Complex::from((-a.norm_sqr() * T::lit(0.5)).exp());
    amps.push(c);
    for n in 1..=n_max {
        c = c * a / T::lit(n as f64).sqrt();
        amps.push(c);
    }
    let v = FockState { modes: vec![Mode(0)], n_max, amps };
    let defect = T::one() - v.norm_sqr();
    if defect > defect_limit::<T>() {
        return Err(Error::CutoffTooSmall { n_max, defect: defect.to_f64_lossy() });
    }
    Ok(v)
}

/// Beam-splitter action restricted to fixed total photon number.
///
/// `blocks[N][p][n]` is the amplitude of output `|p, N-p>` (sum, difference
/// port) produced by input `|n, N-n>`.
#[derive(Clone, Debug)]
pub struct BsBlocks<T> {
    blocks: Vec<Vec<Vec<T>>>,
}

impl<T: Real> BsBlocks<T> {
    /// Built column by column from `a† -> (c† + d†)/√2`, `b† -> (c† - d†)/√2`.
    pub fn new(n_max: usize) -> Self {
        let r = T::FRAC_1_SQRT_2();
        let mut blocks: Vec<Vec<Vec<T>>> = vec![vec![vec![T::one()]]];
        for total in 1..=n_max {
            let mut block = vec![vec![T::zero(); total + 1]; total + 1];
            let prev = &blocks[total - 1];
            for n in 0..=total {
                let m = total - n;
                // raise from |n-1, m> with a†, or from |0, m-1> with b†
                let (src, sign, k) = if n > 0 { (n - 1, T::one(), n) } else { (0, -T::one(), m) };
                let norm = r / T::lit(k as f64).sqrt();
                for p in 0..total {
                    let v = prev[p][src];
                    if v == T::zero() {
                        continue;
                    }
                    let q = total - 1 - p;
                    block[p + 1][n] += norm * v * T::lit((p + 1) as f64).sqrt();
                    block[p][n] += sign * norm * v * T::lit((q + 1) as f64).sqrt();
                }
            }
            blocks.push(block);
        }
        Self { blocks }
    }

    pub fn n_max(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn block(&self, total: usize) -> &[Vec<T>] {
        &self.blocks[total]
    }
}

/// Apply the beam splitter to two modes of `state`. Components with more
/// than `n_max` photons in the two input modes together are dropped; if
/// their weight exceeds the defect limit the call fails.
pub fn bs_fock<T: Real>(state: &FockState<T>, spec: &BeamSplitterSpec) -> Result<FockState<T>> {
    bs_fock_with(state, spec, &BsBlocks::new(state.n_max))
}

pub fn bs_fock_with<T: Real>(
    state: &FockState<T>,
    spec: &BeamSplitterSpec,
    blocks: &BsBlocks<T>,
) -> Result<FockState<T>> {
    let ia = state.index_of(spec.input_a)?;
    let ib = state.index_of(spec.input_b)?;
    for out in [spec.output_sum, spec.output_diff] {
        if state.modes.contains(&out) {
            return Err(Error::LabelCollision(out));
        }
    }
    let (sa, sb) = (state.stride(ia), state.stride(ib));
    let dim = state.dim();
    let zero = Complex::from(T::zero());
    let mut out = vec![zero; state.amps.len()];
    let mut dropped = T::zero();
    for (flat, &amp) in state.amps.iter().enumerate() {
        if amp == zero {
            continue;
        }
        let n = state.occupation(flat, ia);
        let m = state.occupation(flat, ib);
        let total = n + m;
        if total >= dim {
            dropped += amp.norm_sqr();
            continue;
        }
        let base = flat - n * sa - m * sb;
        for (p, row) in blocks.block(total).iter().enumerate() {
            let w = row[n];
            if w != T::zero() {
                out[base + p * sa + (total - p) * sb] += amp * w;
            }
        }
    }
    let scale = T::one().max(state.norm_sqr());
    if dropped > defect_limit::<T>() * scale {
        return Err(Error::CutoffTooSmall { n_max: state.n_max, defect: dropped.to_f64_lossy() });
    }
    let mut modes = state.modes.clone();
    modes[ia] = spec.output_sum;
    modes[ib] = spec.output_diff;
    Ok(FockState { modes, n_max: state.n_max, amps: out })
}

/// Project `mode` onto the outcome's photon-number set. Returns the outcome
/// probability relative to the input norm and the renormalized state, which
/// keeps the measured mode.
pub fn project_fock<T: Real>(state: &FockState<T>, mode: Mode, outcome: PcOutcome) -> Result<(T, FockState<T>)> {
    let i = state.index_of(mode)?;
    let zero = Complex::from(T::zero());
    let amps: Vec<_> = state
        .amps
        .iter()
        .enumerate()
        .map(|(flat, &a)| if outcome.contains(state.occupation(flat, i)) { a } else { zero })
        .collect();
    let projected = FockState { amps, ..state.clone() };
    let total = state.norm_sqr();
    let kept = projected.norm_sqr();
    let p = kept / total;
    if !(p >= T::zero_tol()) {
        return Err(Error::ZeroProbability(p.to_f64_lossy()));
    }
    Ok((p, projected.scale(Complex::from(T::one() / kept.sqrt()))))
}

fn projected_overlap<T: Real>(a: &FockState<T>, b: &FockState<T>, outcomes: &[PcOutcome]) -> Complex<T> {
    let zero = Complex::from(T::zero());
    a.amps
        .iter()
        .zip(&b.amps)
        .enumerate()
        .filter(|(flat, _)| outcomes.iter().enumerate().all(|(i, o)| o.contains(a.occupation(*flat, i))))
        .map(|(_, (x, y))| x.conj() * y)
        .fold(zero, |s, v| s + v)
}

type Matrix4<T> = [[Complex<T>; 4]; 4];

/// Oracle probabilities and fidelities for one case.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleCase<T> {
    pub probability: T,
    pub fidelity_ab: Option<T>,
    pub fidelity_ba: Option<T>,
}

/// The protocol at one parameter point, in the truncated Fock basis.
#[derive(Clone, Debug)]
pub struct OracleModel<T> {
    n_max: usize,
    /// Alice's ports (7, 8) for each resource term.
    alice_ports: Vec<FockState<T>>,
    /// Bob's ports (9, 10) for each resource term.
    bob_ports: Vec<FockState<T>>,
    /// Single-mode vectors for resource modes 3, 4, 5, per term.
    locals: Vec<[FockState<T>; 3]>,
    /// Resource coefficient, normalized in the Fock basis.
    coeff: T,
    /// Normalized cat vectors `|+>`, `|->`.
    cats: [FockState<T>; 2],
    alice_in: [Complex<T>; 2],
    bob_in: [Complex<T>; 2],
    /// Largest truncation loss seen while building the model.
    pub defect: T,
}

fn cat_pair<T: Real>(alpha: T, n_max: usize) -> Result<[FockState<T>; 2]> {
    let v = coherent_fock(Complex::from(alpha), n_max)?;
    let zero = Complex::from(T::zero());
    let part = |parity: usize| {
        let amps: Vec<_> = v.amps.iter().enumerate().map(|(n, &a)| if n % 2 == parity { a } else { zero }).collect();
        let s = FockState { amps, ..v.clone() };
        let k = T::one() / s.norm_sqr().sqrt();
        s.scale(Complex::from(k))
    };
    Ok([part(0), part(1)])
}

fn qubit<T: Real>(cats: &[FockState<T>; 2], c: [Complex<T>; 2], mode: Mode) -> FockState<T> {
    let mut s = cats[0].scale(c[0]).add(&cats[1].scale(c[1])).expect("cat vectors share a shape");
    s.modes[0] = mode;
    s
}

/// Cat coefficients of `U† (c+, c-)`.
fn inverse_correction<T: Real>(c: Correction, v: [Complex<T>; 2]) -> [Complex<T>; 2] {
    let [p, m] = v;
    let out = match c.op {
        UnitaryOp::I => [p, m],
        UnitaryOp::U1 => [m, p],
        UnitaryOp::U2 => [-m, p],
        UnitaryOp::U3 => [p, -m],
    };
    if c.negated {
        out.map(|z| -z)
    } else {
        out
    }
}

impl<T: Real> OracleModel<T> {
    pub fn new(params: &ProtocolParams<T>, n_max: usize) -> Result<Self> {
        let alpha = params.alpha.alpha();
        let cats = cat_pair(alpha, n_max)?;
        let a = params.alice_coeffs();
        let b = params.bob_coeffs();
        let alice_in = [a.plus, a.minus];
        let bob_in = [b.plus, b.minus];
        let info_a = qubit(&cats, alice_in, BS_ALICE.input_a);
        let info_b = qubit(&cats, bob_in, BS_BOB.input_a);
        let blocks = BsBlocks::new(n_max);
        let mut defect = T::zero();
        let coh = |s: i8| coherent_fock(Complex::from(if s > 0 { alpha } else { -alpha }), n_max);
        for v in [coh(1)?, cats[0].clone()] {
            defect = defect.max((T::one() - v.norm_sqr()).abs());
        }
        let (mut alice_ports, mut bob_ports, mut locals) = (Vec::new(), Vec::new(), Vec::new());
        for signs in CLUSTER_SIGNS {
            let a2 = coh(signs[0])?.relabeled(BS_ALICE.input_b);
            let a6 = coh(signs[4])?.relabeled(BS_BOB.input_b);
            let va = bs_fock_with(&info_a.tensor(&a2)?, &BS_ALICE, &blocks)?;
            let vb = bs_fock_with(&info_b.tensor(&a6)?, &BS_BOB, &blocks)?;
            defect = defect.max((T::one() - va.norm_sqr()).abs()).max((T::one() - vb.norm_sqr()).abs());
            alice_ports.push(va);
            bob_ports.push(vb);
            locals.push([coh(signs[1])?, coh(signs[2])?, coh(signs[3])?]);
        }
        // unit-coefficient terms; the overlap matrix fixes the normalisation
        let mut norm = Complex::from(T::zero());
        for k in 0..4 {
            for j in 0..4 {
                let mut ov = Complex::from(T::one());
                for (sj, sk) in CLUSTER_SIGNS[j].iter().zip(&CLUSTER_SIGNS[k]) {
                    ov = ov * coh(*sj)?.inner_product(&coh(*sk)?)?;
                }
                norm += ov;
            }
        }
        let coeff = T::one() / norm.re.sqrt();
        Ok(Self { n_max, alice_ports, bob_ports, locals, coeff, cats, alice_in, bob_in, defect })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `K[j][k] = <V_j|Π|V_k> <W_j|Π|W_k> <c5_j|Π|c5_k>` for the counted modes.
    fn kernel(&self, spec: &CaseSpec) -> Result<Matrix4<T>> {
        let zero = Complex::from(T::zero());
        let mut k = [[zero; 4]; 4];
        let alice = [spec.alice.first, spec.alice.second];
        let bob = [spec.bob.first, spec.bob.second];
        let charlie = [spec.charlie.outcome()];
        for (j, row) in k.iter_mut().enumerate() {
            for (i, entry) in row.iter_mut().enumerate() {
                *entry = projected_overlap(&self.alice_ports[j], &self.alice_ports[i], &alice)
                    * projected_overlap(&self.bob_ports[j], &self.bob_ports[i], &bob)
                    * projected_overlap(&self.locals[j][2], &self.locals[i][2], &charlie);
            }
        }
        Ok(k)
    }

    /// Probability of `case_id` and the fidelities after the given corrections
    /// (Alice's, Bob's). The reduced output states are computed as density
    /// matrices, so no product structure is assumed.
    pub fn case_with(&self, case_id: u8, corr_alice: Correction, corr_bob: Correction) -> Result<OracleCase<T>> {
        let spec = case_by_id(case_id)?;
        let k = self.kernel(&spec)?;
        let c2 = self.coeff * self.coeff;
        // <chi|ψ> for the intended input pulled back through the correction
        let chi_b = qubit(&self.cats, inverse_correction(corr_bob, self.alice_in), Mode(0));
        let chi_a = qubit(&self.cats, inverse_correction(corr_alice, self.bob_in), Mode(0));
        let mut probability = T::zero();
        let mut fab = T::zero();
        let mut fba = T::zero();
        for j in 0..4 {
            for i in 0..4 {
                let w = k[j][i] * c2;
                let b3 = self.locals[j][0].inner_product(&self.locals[i][0])?;
                let a4 = self.locals[j][1].inner_product(&self.locals[i][1])?;
                probability += (w * b3 * a4).re;
                let tb = chi_b.inner_product(&self.locals[i][0])? * self.locals[j][0].inner_product(&chi_b)?;
                let ta = chi_a.inner_product(&self.locals[i][1])? * self.locals[j][1].inner_product(&chi_a)?;
                fab += (w * a4 * tb).re;
                fba += (w * b3 * ta).re;
            }
        }
        if !(probability >= T::zero_tol()) {
            return Ok(OracleCase { probability: T::zero(), fidelity_ab: None, fidelity_ba: None });
        }
        Ok(OracleCase { probability, fidelity_ab: Some(fab / probability), fidelity_ba: Some(fba / probability) })
    }

    /// Probability and fidelities under the engine's correction policy.
    pub fn case(&self, case_id: u8) -> Result<OracleCase<T>> {
        let e = correction_policy()
            .entries
            .get((case_id as usize).wrapping_sub(1))
            .ok_or_else(|| Error::InvalidParameter(format!("case id {case_id} outside 1..=50")))?;
        self.case_with(case_id, e.alice, e.bob)
    }

    pub fn probability(&self, case_id: u8) -> Result<T> {
        Ok(self.case(case_id)?.probability)
    }

    pub fn average_fidelity(&self, direction: Direction) -> Result<T> {
        let mut total = T::zero();
        for spec in case_layout() {
            let c = self.case(spec.id)?;
            let f = match direction {
                Direction::AB => c.fidelity_ab,
                Direction::BA => c.fidelity_ba,
            };
            total += c.probability * f.unwrap_or_else(T::zero);
        }
        Ok(total)
    }
}

/// A protocol quantity the oracle can recompute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    CaseProbability(u8),
    /// Fidelity of one case under the engine's policy.
    CaseFidelity(u8, Direction),
    /// Fidelity of one case under explicit corrections (Alice's, Bob's).
    CorrectedFidelity(u8, Direction, Correction, Correction),
    AverageFidelity(Direction),
}

impl Quantity {
    pub fn describe(&self) -> String {
        match self {
            Quantity::CaseProbability(c) => format!("probability[{c}]"),
            Quantity::CaseFidelity(c, d) => format!("fidelity_{}[{c}]", d.label().to_lowercase()),
            Quantity::CorrectedFidelity(c, d, a, b) => {
                format!("fidelity_{}[{c}] with ({a},{b})", d.label().to_lowercase())
            }
            Quantity::AverageFidelity(d) => format!("avg_fidelity_{}", d.label().to_lowercase()),
        }
    }
}

pub fn oracle_value<T: Real>(model: &OracleModel<T>, q: Quantity) -> Result<Option<T>> {
    let pick = |c: OracleCase<T>, d: Direction| match d {
        Direction::AB => c.fidelity_ab,
        Direction::BA => c.fidelity_ba,
    };
    Ok(match q {
        Quantity::CaseProbability(c) => Some(model.probability(c)?),
        Quantity::CaseFidelity(c, d) => pick(model.case(c)?, d),
        Quantity::CorrectedFidelity(c, d, a, b) => pick(model.case_with(c, a, b)?, d),
        Quantity::AverageFidelity(d) => Some(model.average_fidelity(d)?),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// The oracle sides with the engine.
    EngineConfirmed,
    /// The oracle sides with the closed form.
    FormulaConfirmed,
    Inconclusive,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::EngineConfirmed => "ENGINE_CONFIRMED",
            Verdict::FormulaConfirmed => "FORMULA_CONFIRMED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Adjudication {
    pub verdict: Verdict,
    pub oracle: Option<f64>,
    pub error_bar: f64,
}

/// Recompute `quantity` in the Fock basis and say which of the two values it
/// supports. Inconclusive when α exceeds [`MAX_ORACLE_ALPHA`], the cutoff
/// is too small, or the oracle matches both or neither.
pub fn adjudicate(
    quantity: Quantity,
    engine: f64,
    closed_form: f64,
    params: &ProtocolParams<f64>,
    n_max: usize,
) -> Adjudication {
    let inconclusive = |oracle, error_bar| Adjudication { verdict: Verdict::Inconclusive, oracle, error_bar };
    if params.alpha.alpha() > MAX_ORACLE_ALPHA {
        return inconclusive(None, f64::NAN);
    }
    let model = match OracleModel::new(params, n_max) {
        Ok(m) => m,
        Err(_) => return inconclusive(None, f64::NAN),
    };
    adjudicate_with(&model, quantity, engine, closed_form)
}

pub fn adjudicate_with(model: &OracleModel<f64>, quantity: Quantity, engine: f64, closed_form: f64) -> Adjudication {
    let error_bar = 10.0 * model.defect;
    let oracle = match oracle_value(model, quantity) {
        Ok(Some(v)) => v,
        _ => return Adjudication { verdict: Verdict::Inconclusive, oracle: None, error_bar },
    };
    let tol = ORACLE_TOL + error_bar;
    let engine_ok = (oracle - engine).abs() <= tol;
    let formula_ok = (oracle - closed_form).abs() <= tol;
    let verdict = match (engine_ok, formula_ok) {
        (true, false) => Verdict::EngineConfirmed,
        (false, true) => Verdict::FormulaConfirmed,
        // both agree: nothing to adjudicate, the engine stands
        (true, true) => Verdict::EngineConfirmed,
        (false, false) => Verdict::Inconclusive,
    };
    Adjudication { verdict, oracle: Some(oracle), error_bar }
}
