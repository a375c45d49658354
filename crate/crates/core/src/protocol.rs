//! Controlled bidirectional teleportation over the five-mode cluster-type ECS.
//!
//! Mode map: Alice's qubit on 0, Bob's on 1, the resource on 2..=6 (Alice
//! holds 2 and 4, Bob 3 and 6, Charlie 5). Alice mixes 0 and 2 into the
//! counted modes 7 (sum) and 8 (difference); Bob mixes 1 and 6 into 9 (sum)
//! and 10 (difference). After counting 7, 8, 9, 10 and Charlie's parity on 5,
//! Alice holds the teleported copy of Bob's qubit on mode 4 and Bob holds
//! Alice's on mode 3.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    cat_coeffs, factorize_two_mode_product, from_cat_coeffs, AlphaParams, CatCoeffs, CoherentTerm, Mode, MultimodeState,
};
use crate::closed_form::{closed_fidelity, Direction, FidelityClass, FidelityKind};
use crate::error::{Error, Result};
use crate::measurement::{measure, PcOutcome};
use crate::optics::{apply_bs_ps, BeamSplitterSpec};
use crate::scalar::Real;

pub const ALICE_INPUT: Mode = Mode(0);
pub const BOB_INPUT: Mode = Mode(1);
pub const RESOURCE_MODES: [Mode; 5] = [Mode(2), Mode(3), Mode(4), Mode(5), Mode(6)];
pub const BOB_OUTPUT: Mode = Mode(3);
pub const ALICE_OUTPUT: Mode = Mode(4);
pub const CHARLIE_MODE: Mode = Mode(5);

/// Alice's beam splitter: modes (0, 2) into (7, 8).
pub const BS_ALICE: BeamSplitterSpec =
    BeamSplitterSpec { input_a: Mode(0), input_b: Mode(2), output_sum: Mode(7), output_diff: Mode(8) };
/// Bob's beam splitter: modes (1, 6) into (9, 10).
pub const BS_BOB: BeamSplitterSpec =
    BeamSplitterSpec { input_a: Mode(1), input_b: Mode(6), output_sum: Mode(9), output_diff: Mode(10) };

/// Sign patterns of the four resource terms on modes (2, 3, 4, 5, 6).
pub const CLUSTER_SIGNS: [[i8; 5]; 4] = [[1, 1, 1, 1, 1], [1, 1, -1, -1, -1], [-1, -1, 1, -1, 1], [-1, -1, -1, 1, -1]];

/// Input-state angles and the coherent amplitude.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProtocolParams<T> {
    pub alpha: AlphaParams<T>,
    pub theta: T,
    pub phi: T,
    pub theta_p: T,
    pub phi_p: T,
}

impl<T: Real> ProtocolParams<T> {
    /// `alpha2` is the mean photon number; angles in radians with
    /// `theta ∈ [0, π]` and `phi ∈ [0, 2π)`.
    pub fn new(alpha2: T, theta: T, phi: T, theta_p: T, phi_p: T) -> Result<Self> {
        let alpha = AlphaParams::from_mean_photons(alpha2)?;
        let pi = T::PI();
        for (name, th) in [("theta", theta), ("theta_p", theta_p)] {
            if !(th >= T::zero() && th <= pi) {
                return Err(Error::InvalidParameter(format!("{name} = {th} outside [0, pi]")));
            }
        }
        for (name, ph) in [("phi", phi), ("phi_p", phi_p)] {
            if !(ph >= T::zero() && ph < pi + pi) {
                return Err(Error::InvalidParameter(format!("{name} = {ph} outside [0, 2 pi)")));
            }
        }
        Ok(Self { alpha, theta, phi, theta_p, phi_p })
    }

    pub fn alpha2(&self) -> T {
        self.alpha.mean_photons()
    }

    /// `(A+, A-) = (cos θ/2, e^{iφ} sin θ/2)`.
    pub fn alice_coeffs(&self) -> CatCoeffs<T> {
        qubit_coeffs(self.theta, self.phi)
    }

    /// `(B+, B-) = (cos θ'/2, e^{iφ'} sin θ'/2)`.
    pub fn bob_coeffs(&self) -> CatCoeffs<T> {
        qubit_coeffs(self.theta_p, self.phi_p)
    }

    /// Alice and Bob exchange their input states.
    pub fn swapped(&self) -> Self {
        Self { theta: self.theta_p, phi: self.phi_p, theta_p: self.theta, phi_p: self.phi, ..*self }
    }

    /// Same parameters with the given party's polar angle replaced.
    pub fn with_theta(&self, party: Party, theta: T) -> Result<Self> {
        let (a, b) = match party {
            Party::Alice => (theta, self.theta_p),
            Party::Bob => (self.theta, theta),
        };
        Self::new(self.alpha2(), a, self.phi, b, self.phi_p)
    }

    pub fn with_alpha2(&self, alpha2: T) -> Result<Self> {
        Self::new(alpha2, self.theta, self.phi, self.theta_p, self.phi_p)
    }
}

fn qubit_coeffs<T: Real>(theta: T, phi: T) -> CatCoeffs<T> {
    let half = theta * T::lit(0.5);
    CatCoeffs::new(Complex::from(half.cos()), Complex::from_polar(half.sin(), phi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Party {
    Alice,
    Bob,
}

/// Normalized information qubit: Alice's on mode 0, Bob's on mode 1.
pub fn build_information_state<T: Real>(params: &ProtocolParams<T>, party: Party) -> MultimodeState<T> {
    match party {
        Party::Alice => from_cat_coeffs(&params.alice_coeffs(), &params.alpha, ALICE_INPUT),
        Party::Bob => from_cat_coeffs(&params.bob_coeffs(), &params.alpha, BOB_INPUT),
    }
}

/// The four-term cluster-type resource on modes 2..=6 with its closed-form
/// normalisation `[2 sqrt(1 + 2x^6 + x^8)]^{-1}`.
pub fn build_cluster_ecs<T: Real>(alpha: &AlphaParams<T>) -> MultimodeState<T> {
    let x2 = alpha.x2();
    let norm = T::lit(2.0) * (T::one() + T::lit(2.0) * x2.powi(3) + x2.powi(4)).sqrt();
    let coeff = Complex::from(T::one() / norm);
    let a = alpha.alpha();
    let terms = CLUSTER_SIGNS
        .iter()
        .map(|signs| {
            let amps = signs.iter().map(|&s| Complex::from(if s > 0 { a } else { -a })).collect();
            CoherentTerm::new(coeff, amps)
        })
        .collect();
    MultimodeState::new(RESOURCE_MODES.to_vec(), terms).expect("resource state is well formed")
}

/// Seven-mode state after both beam splitters, before any counting.
pub fn interfered_state<T: Real>(params: &ProtocolParams<T>) -> Result<MultimodeState<T>> {
    let joint = build_information_state(params, Party::Alice)
        .tensor(&build_information_state(params, Party::Bob))?
        .tensor(&build_cluster_ecs(&params.alpha))?;
    let after_alice = apply_bs_ps(&joint, &BS_ALICE)?;
    apply_bs_ps(&after_alice, &BS_BOB)
}

/// Counts on one partner's two output ports, in port order
/// (Alice: modes 7, 8; Bob: modes 9, 10).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DetectorPair {
    pub first: PcOutcome,
    pub second: PcOutcome,
}

impl DetectorPair {
    pub const DARK: Self = Self { first: PcOutcome::Vacuum, second: PcOutcome::Vacuum };
    pub const NZE_FIRST: Self = Self { first: PcOutcome::Nze, second: PcOutcome::Vacuum };
    pub const NZE_SECOND: Self = Self { first: PcOutcome::Vacuum, second: PcOutcome::Nze };
    pub const ODD_FIRST: Self = Self { first: PcOutcome::Odd, second: PcOutcome::Vacuum };
    pub const ODD_SECOND: Self = Self { first: PcOutcome::Vacuum, second: PcOutcome::Odd };

    /// At least one port must be dark and neither may report bare parity.
    pub fn new(first: PcOutcome, second: PcOutcome) -> Result<Self> {
        let allowed = |o| matches!(o, PcOutcome::Vacuum | PcOutcome::Nze | PcOutcome::Odd);
        if !allowed(first) || !allowed(second) || (first != PcOutcome::Vacuum && second != PcOutcome::Vacuum) {
            return Err(Error::InvalidParameter(format!("invalid detector pair ({first},{second})")));
        }
        Ok(Self { first, second })
    }

    pub fn is_dark(&self) -> bool {
        *self == Self::DARK
    }
}

impl fmt::Display for DetectorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

/// Charlie's parity result on mode 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn outcome(self) -> PcOutcome {
        match self {
            Parity::Even => PcOutcome::Even,
            Parity::Odd => PcOutcome::Odd,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::InvalidParameter(format!("unknown parity {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Category {
    Failure,
    Unidirectional,
    Bidirectional,
}

impl Category {
    pub fn label(self) -> &'static str {
        match self {
            Category::Failure => "FAILURE",
            Category::Unidirectional => "UNIDIRECTIONAL",
            Category::Bidirectional => "BIDIRECTIONAL",
        }
    }
}

/// One joint counting outcome, identified by its row number `id` (1..=50).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CaseSpec {
    pub id: u8,
    pub alice: DetectorPair,
    pub bob: DetectorPair,
    pub charlie: Parity,
}

impl CaseSpec {
    pub fn category(&self) -> Category {
        match (self.alice.is_dark(), self.bob.is_dark()) {
            (true, true) => Category::Failure,
            (false, false) => Category::Bidirectional,
            _ => Category::Unidirectional,
        }
    }

    /// The case with Alice's and Bob's counts exchanged.
    pub fn mirror(&self) -> CaseSpec {
        find_case(self.bob, self.alice, self.charlie).expect("layout is closed under mirroring")
    }
}

/// All 50 outcomes in reference-table order.
pub fn case_layout() -> &'static [CaseSpec] {
    static LAYOUT: OnceLock<Vec<CaseSpec>> = OnceLock::new();
    LAYOUT.get_or_init(|| {
        use DetectorPair as D;
        let active = [D::NZE_FIRST, D::NZE_SECOND, D::ODD_FIRST, D::ODD_SECOND];
        let nze = [D::NZE_FIRST, D::NZE_SECOND];
        let odd = [D::ODD_FIRST, D::ODD_SECOND];
        let mut pairs = vec![(D::DARK, D::DARK)];
        pairs.extend(active.iter().map(|&a| (a, D::DARK)));
        pairs.extend(active.iter().map(|&b| (D::DARK, b)));
        for (left, right) in [(nze, nze), (odd, odd), (nze, odd), (odd, nze)] {
            for a in left {
                for b in right {
                    pairs.push((a, b));
                }
            }
        }
        pairs
            .into_iter()
            .flat_map(|(alice, bob)| [Parity::Even, Parity::Odd].map(|charlie| (alice, bob, charlie)))
            .enumerate()
            .map(|(i, (alice, bob, charlie))| CaseSpec { id: (i + 1) as u8, alice, bob, charlie })
            .collect()
    })
}

pub fn find_case(alice: DetectorPair, bob: DetectorPair, charlie: Parity) -> Option<CaseSpec> {
    case_layout().iter().copied().find(|c| c.alice == alice && c.bob == bob && c.charlie == charlie)
}

pub fn case_by_id(id: u8) -> Result<CaseSpec> {
    case_layout()
        .get((id as usize).wrapping_sub(1))
        .copied()
        .ok_or_else(|| Error::InvalidParameter(format!("case id {id} outside 1..=50")))
}

/// Cat-basis qubit operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UnitaryOp {
    I,
    U1,
    U2,
    U3,
}

impl UnitaryOp {
    pub const ALL: [UnitaryOp; 4] = [UnitaryOp::I, UnitaryOp::U1, UnitaryOp::U2, UnitaryOp::U3];

    /// Image of `(c+, c-)`.
    pub fn act<T: Real>(self, c: CatCoeffs<T>) -> CatCoeffs<T> {
        match self {
            UnitaryOp::I => c,
            UnitaryOp::U1 => CatCoeffs::new(c.minus, c.plus),
            UnitaryOp::U2 => CatCoeffs::new(c.minus, -c.plus),
            UnitaryOp::U3 => CatCoeffs::new(c.plus, -c.minus),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            UnitaryOp::I => "I",
            UnitaryOp::U1 => "U1",
            UnitaryOp::U2 => "U2",
            UnitaryOp::U3 => "U3",
        }
    }
}

/// A unitary with an explicit global sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Correction {
    pub op: UnitaryOp,
    pub negated: bool,
}

impl Correction {
    pub const IDENTITY: Correction = Correction { op: UnitaryOp::I, negated: false };

    pub fn new(op: UnitaryOp) -> Self {
        Self { op, negated: false }
    }

    pub fn negative(op: UnitaryOp) -> Self {
        Self { op, negated: true }
    }

    pub fn act<T: Real>(self, c: CatCoeffs<T>) -> CatCoeffs<T> {
        let out = self.op.act(c);
        if self.negated {
            out.scale(Complex::from(-T::one()))
        } else {
            out
        }
    }
}

impl fmt::Display for Correction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        f.write_str(self.op.label())
    }
}

impl FromStr for Correction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (negated, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, s),
        };
        let op = match body {
            "I" => UnitaryOp::I,
            "U1" => UnitaryOp::U1,
            "U2" => UnitaryOp::U2,
            "U3" => UnitaryOp::U3,
            other => return Err(Error::InvalidParameter(format!("unknown correction {other:?}"))),
        };
        Ok(Self { op, negated })
    }
}

pub fn apply_correction<T: Real>(
    state: &MultimodeState<T>,
    c: Correction,
    alpha: &AlphaParams<T>,
) -> Result<MultimodeState<T>> {
    let coeffs = cat_coeffs(state, alpha)?;
    Ok(from_cat_coeffs(&c.act(coeffs), alpha, state.modes()[0]))
}

/// `|<a|b>|^2` for normalized single-mode states on the same mode.
pub fn fidelity<T: Real>(a: &MultimodeState<T>, b: &MultimodeState<T>) -> Result<T> {
    if a.modes() != b.modes() {
        return Err(Error::ModeMismatch(format!("{:?} vs {:?}", a.modes(), b.modes())));
    }
    let f = a.inner_product(b)?.norm_sqr() / (a.norm_sqr() * b.norm_sqr());
    Ok(f.min(T::one()))
}

/// Best of `{±I, ±U1, ±U2, ±U3}` applied to `raw` against `target`. Ties go
/// to the earlier operation, then to the positive sign.
pub fn derive_correction<T: Real>(
    raw: &MultimodeState<T>,
    target: &MultimodeState<T>,
    alpha: &AlphaParams<T>,
) -> Result<(Correction, T)> {
    let mut best: Option<(Correction, T)> = None;
    for op in UnitaryOp::ALL {
        for negated in [false, true] {
            let c = Correction { op, negated };
            let f = fidelity(target, &apply_correction(raw, c, alpha)?)?;
            match best {
                Some((_, bf)) if f <= bf + T::merge_tol() => {}
                _ => best = Some((c, f)),
            }
        }
    }
    Ok(best.expect("candidate set is non-empty"))
}

/// Conditional states before correction.
#[derive(Clone, Debug, PartialEq)]
pub struct RawCase<T> {
    pub spec: CaseSpec,
    pub probability: T,
    /// `(alice on mode 4, bob on mode 3)`, normalized; `None` when the
    /// outcome has zero probability.
    pub states: Option<(MultimodeState<T>, MultimodeState<T>)>,
}

/// Count all five detectors on the interfered state.
pub fn raw_case<T: Real>(
    interfered: &MultimodeState<T>,
    params: &ProtocolParams<T>,
    spec: CaseSpec,
) -> Result<RawCase<T>> {
    let steps = [
        (BS_ALICE.output_sum, spec.alice.first),
        (BS_ALICE.output_diff, spec.alice.second),
        (BS_BOB.output_sum, spec.bob.first),
        (BS_BOB.output_diff, spec.bob.second),
        (CHARLIE_MODE, spec.charlie.outcome()),
    ];
    let mut state = interfered.clone();
    let mut probability = T::one();
    for (mode, outcome) in steps {
        match measure(&state, mode, outcome) {
            Ok(m) => {
                probability *= m.probability;
                state = m.state;
            }
            Err(Error::ZeroProbability(_)) => {
                return Ok(RawCase { spec, probability: T::zero(), states: None });
            }
            Err(e) => return Err(e),
        }
    }
    let pair = state.reordered(&[ALICE_OUTPUT, BOB_OUTPUT])?;
    let (alice, bob) = factorize_two_mode_product(&pair, &params.alpha)?;
    Ok(RawCase { spec, probability, states: Some((alice.normalize()?, bob.normalize()?)) })
}

/// Everything known about one outcome after correction.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseRecord<T> {
    pub case_id: u8,
    pub alice_pc: DetectorPair,
    pub bob_pc: DetectorPair,
    pub charlie_parity: Parity,
    pub probability: T,
    pub corr_alice: Correction,
    pub corr_bob: Correction,
    /// Corrected states (Alice on mode 4, Bob on mode 3).
    pub state_alice: Option<MultimodeState<T>>,
    pub state_bob: Option<MultimodeState<T>>,
    /// Bob's copy against Alice's input.
    pub fidelity_ab: Option<T>,
    /// Alice's copy against Bob's input.
    pub fidelity_ba: Option<T>,
    pub category: Category,
}

impl<T: Real> CaseRecord<T> {
    pub fn fidelity(&self, direction: Direction) -> Option<T> {
        match direction {
            Direction::AB => self.fidelity_ab,
            Direction::BA => self.fidelity_ba,
        }
    }
}

/// Targets the corrected outputs are compared against: Bob's input moved
/// to Alice's output mode and vice versa.
fn targets<T: Real>(params: &ProtocolParams<T>) -> (MultimodeState<T>, MultimodeState<T>) {
    (
        from_cat_coeffs(&params.bob_coeffs(), &params.alpha, ALICE_OUTPUT),
        from_cat_coeffs(&params.alice_coeffs(), &params.alpha, BOB_OUTPUT),
    )
}

fn correct_case<T: Real>(raw: RawCase<T>, params: &ProtocolParams<T>) -> Result<CaseRecord<T>> {
    let policy = &correction_policy().entries[raw.spec.id as usize - 1];
    correct_case_with(raw, params, policy.alice, policy.bob)
}

fn correct_case_with<T: Real>(
    raw: RawCase<T>,
    params: &ProtocolParams<T>,
    corr_alice: Correction,
    corr_bob: Correction,
) -> Result<CaseRecord<T>> {
    let spec = raw.spec;
    let mut record = CaseRecord {
        case_id: spec.id,
        alice_pc: spec.alice,
        bob_pc: spec.bob,
        charlie_parity: spec.charlie,
        probability: raw.probability,
        corr_alice,
        corr_bob,
        state_alice: None,
        state_bob: None,
        fidelity_ab: None,
        fidelity_ba: None,
        category: spec.category(),
    };
    if let Some((alice, bob)) = raw.states {
        let (target_alice, target_bob) = targets(params);
        let alice = apply_correction(&alice, corr_alice, &params.alpha)?;
        let bob = apply_correction(&bob, corr_bob, &params.alpha)?;
        record.fidelity_ba = Some(fidelity(&target_alice, &alice)?);
        record.fidelity_ab = Some(fidelity(&target_bob, &bob)?);
        record.state_alice = Some(alice);
        record.state_bob = Some(bob);
    }
    Ok(record)
}

pub fn run_case<T: Real>(
    params: &ProtocolParams<T>,
    alice_pc: DetectorPair,
    bob_pc: DetectorPair,
    charlie_parity: Parity,
) -> Result<CaseRecord<T>> {
    let spec = find_case(alice_pc, bob_pc, charlie_parity)
        .ok_or_else(|| Error::InvalidParameter(format!("no case ({alice_pc}|{bob_pc}|{})", charlie_parity.label())))?;
    run_case_by_id(params, spec.id)
}

pub fn run_case_by_id<T: Real>(params: &ProtocolParams<T>, case_id: u8) -> Result<CaseRecord<T>> {
    let spec = case_by_id(case_id)?;
    let interfered = interfered_state(params)?;
    correct_case(raw_case(&interfered, params, spec)?, params)
}

/// Like [`run_case_by_id`] but with the given corrections in place of the
/// policy.
pub fn run_case_with<T: Real>(
    params: &ProtocolParams<T>,
    case_id: u8,
    corr_alice: Correction,
    corr_bob: Correction,
) -> Result<CaseRecord<T>> {
    let spec = case_by_id(case_id)?;
    let interfered = interfered_state(params)?;
    correct_case_with(raw_case(&interfered, params, spec)?, params, corr_alice, corr_bob)
}

/// All 50 records, ordered by case id. Cases are evaluated in parallel.
pub fn enumerate_cases<T: Real>(params: &ProtocolParams<T>) -> Result<Vec<CaseRecord<T>>> {
    let interfered = interfered_state(params)?;
    case_layout().par_iter().map(|&spec| correct_case(raw_case(&interfered, params, spec)?, params)).collect()
}

/// Reference point at which the fixed correction policy is derived: a
/// generic input pair with `|A+| > |A-|` and `|B+| > |B-|`, inside the
/// oracle's amplitude range.
pub const POLICY_REFERENCE: [f64; 5] = [2.0, 1.0, 0.3, 0.8, 1.1];

pub fn policy_reference_params<T: Real>() -> ProtocolParams<T> {
    let [a2, th, ph, thp, php] = POLICY_REFERENCE.map(T::lit);
    ProtocolParams::new(a2, th, ph, thp, php).expect("reference point is valid")
}

/// Corrections and fidelity classes for one outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolicyEntry {
    pub alice: Correction,
    pub bob: Correction,
    pub class_ab: FidelityKind,
    pub class_ba: FidelityKind,
}

/// Corrections applied by [`run_case`], one entry per case id.
///
/// The parties cannot see the input angles, so the corrections must be a
/// fixed function of the counts. They are obtained once with
/// [`derive_correction`] at [`POLICY_REFERENCE`].
#[derive(Clone, Debug, PartialEq)]
pub struct CorrectionPolicy {
    pub entries: Vec<PolicyEntry>,
}

fn classify(f: f64, params: &ProtocolParams<f64>, direction: Direction) -> Result<FidelityKind> {
    [FidelityKind::One, FidelityKind::F3, FidelityKind::F1, FidelityKind::F2]
        .into_iter()
        .map(|kind| (kind, (closed_fidelity(FidelityClass { kind, direction }, params) - f).abs()))
        .find(|&(_, d)| d < 1e-9)
        .map(|(k, _)| k)
        .ok_or_else(|| Error::InvalidParameter(format!("fidelity {f} matches no closed-form class")))
}

/// Derive the policy table at [`POLICY_REFERENCE`].
pub fn derive_policy() -> Result<CorrectionPolicy> {
    let params = policy_reference_params::<f64>();
    let interfered = interfered_state(&params)?;
    let (target_alice, target_bob) = targets(&params);
    let entries = case_layout()
        .iter()
        .map(|&spec| {
            let raw = raw_case(&interfered, &params, spec)?;
            let (alice, bob) = raw.states.ok_or_else(|| Error::ZeroProbability(0.0))?;
            let (ca, fa) = derive_correction(&alice, &target_alice, &params.alpha)?;
            let (cb, fb) = derive_correction(&bob, &target_bob, &params.alpha)?;
            Ok(PolicyEntry {
                alice: ca,
                bob: cb,
                class_ab: classify(fb, &params, Direction::AB)?,
                class_ba: classify(fa, &params, Direction::BA)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CorrectionPolicy { entries })
}

pub fn correction_policy() -> &'static CorrectionPolicy {
    static POLICY: OnceLock<CorrectionPolicy> = OnceLock::new();
    POLICY.get_or_init(|| derive_policy().expect("policy derivation at the reference point"))
}
