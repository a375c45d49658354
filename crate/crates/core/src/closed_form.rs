//! Closed-form case probabilities, fidelity classes, average and minimum
//! assured fidelity.
//!
//! Every expression is written in `y = x^2 = e^{-2 alpha^2}`, evaluated
//! directly rather than by squaring a cached `x`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::protocol::{enumerate_cases, run_case_by_id, CaseRecord, Party, ProtocolParams};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ProbFamily {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
}

impl ProbFamily {
    pub const ALL: [ProbFamily; 9] = [
        ProbFamily::I,
        ProbFamily::II,
        ProbFamily::III,
        ProbFamily::IV,
        ProbFamily::V,
        ProbFamily::VI,
        ProbFamily::VII,
        ProbFamily::VIII,
        ProbFamily::IX,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ProbFamily::I => "I",
            ProbFamily::II => "II",
            ProbFamily::III => "III",
            ProbFamily::IV => "IV",
            ProbFamily::V => "V",
            ProbFamily::VI => "VI",
            ProbFamily::VII => "VII",
            ProbFamily::VIII => "VIII",
            ProbFamily::IX => "IX",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProbFormulaId {
    pub family: ProbFamily,
    pub branch: Branch,
}

impl fmt::Display for ProbFormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = match self.branch {
            Branch::Plus => '+',
            Branch::Minus => '-',
        };
        write!(f, "{},{}", self.family.label(), b)
    }
}

impl std::str::FromStr for ProbFormulaId {
    type Err = Error;

    /// Accepts `VI,+`, `VI+`, `VI,-`, `VI-`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("unknown probability formula {s:?}"));
        let (head, branch) = if let Some(h) = s.strip_suffix('+') {
            (h, Branch::Plus)
        } else if let Some(h) = s.strip_suffix('-') {
            (h, Branch::Minus)
        } else {
            return Err(bad());
        };
        let head = head.trim_end_matches(',').trim();
        let family = ProbFamily::ALL.into_iter().find(|f| f.label() == head).ok_or_else(bad)?;
        Ok(Self { family, branch })
    }
}

/// The formula that gives the probability of case `case_id` (1..=50).
pub fn formula_for_case(case_id: u8) -> Result<ProbFormulaId> {
    use ProbFamily::*;
    let family = match case_id {
        1..=2 => I,
        3..=6 => II,
        7..=10 => III,
        11..=14 => IV,
        15..=18 => V,
        19..=26 => VI,
        27..=34 => VII,
        35..=42 => VIII,
        43..=50 => IX,
        _ => return Err(Error::InvalidParameter(format!("case id {case_id} outside 1..=50"))),
    };
    let branch = if case_id % 2 == 1 { Branch::Plus } else { Branch::Minus };
    Ok(ProbFormulaId { family, branch })
}

/// Evaluate the printed probability expression.
pub fn closed_probability<T: Real>(id: ProbFormulaId, params: &ProtocolParams<T>) -> T {
    let y = params.alpha.x2();
    let one = T::one();
    let (g2, d2) = (params.alpha.gamma().powi(2), params.alpha.delta().powi(2));
    let (a, b) = (params.alice_coeffs(), params.bob_coeffs());
    let (ap, am) = (a.plus.norm_sqr(), a.minus.norm_sqr());
    let (bp, bm) = (b.plus.norm_sqr(), b.minus.norm_sqr());
    let ga = g2 * ap + d2 * am;
    let gb = g2 * bp + d2 * bm;
    let d = one + T::lit(2.0) * y.powi(3) + y.powi(4);
    let (p, m) = (one + y, one - y);
    let (four, thirty_two) = (T::lit(4.0), T::lit(32.0));
    use Branch::{Minus, Plus};
    use ProbFamily::*;
    match (id.family, id.branch) {
        (I, Plus) => T::lit(2.0) * y * y * p * ap * bp / d,
        (I, Minus) => T::lit(2.0) * y * y * m.powi(3) * ap * bp / (p * p * d),
        (II, Plus) => y * m * m * p * bp / (four * d),
        (II, Minus) => y * m.powi(4) * ga * bp / (four * d),
        (III, Plus) => y * p * p * m * ga * bp / (four * d),
        (III, Minus) => y * m.powi(3) * bp / (four * d),
        (IV, Plus) => y * m * m * p * ap / (four * d),
        (IV, Minus) => y * m.powi(4) * gb * ap / (four * d),
        (V, Plus) => y * p * p * m * gb * ap / (four * d),
        (V, Minus) => y * m.powi(3) * ap / (four * d),
        (VI, Plus) => m.powi(4) * p / (thirty_two * d),
        (VI, Minus) => m.powi(5) * ga * gb / (thirty_two * d),
        (VII, Plus) => m * m * p.powi(3) * ga * gb / (thirty_two * d),
        (VII, Minus) => m.powi(3) * p * p / (thirty_two * d),
        (VIII, Plus) => m.powi(3) * p * p * gb / (thirty_two * d),
        (VIII, Minus) => m.powi(4) * p * ga / (thirty_two * d),
        (IX, Plus) => m.powi(3) * p * p * ga / (thirty_two * d),
        (IX, Minus) => m.powi(4) * p * gb / (thirty_two * d),
    }
}

pub fn closed_case_probability<T: Real>(case_id: u8, params: &ProtocolParams<T>) -> Result<T> {
    Ok(closed_probability(formula_for_case(case_id)?, params))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FidelityKind {
    One,
    F1,
    F2,
    F3,
}

impl FidelityKind {
    pub fn label(self) -> &'static str {
        match self {
            FidelityKind::One => "1",
            FidelityKind::F1 => "F1",
            FidelityKind::F2 => "F2",
            FidelityKind::F3 => "F3",
        }
    }
}

/// `AB`: Alice's state received by Bob. `BA`: Bob's state received by Alice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    AB,
    BA,
}

impl Direction {
    /// The party whose input state is being sent.
    pub fn sender(self) -> Party {
        match self {
            Direction::AB => Party::Alice,
            Direction::BA => Party::Bob,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Direction::AB => "AB",
            Direction::BA => "BA",
        }
    }

    /// The sender's polar angle.
    pub fn theta<T: Real>(self, params: &ProtocolParams<T>) -> T {
        match self {
            Direction::AB => params.theta,
            Direction::BA => params.theta_p,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FidelityClass {
    pub kind: FidelityKind,
    pub direction: Direction,
}

/// `F3 = 1 - x^4 sin^2 θ / (1 + x^4 - 2 x^2 cos θ)`.
pub fn f3<T: Real>(y: T, theta: T) -> T {
    let one = T::one();
    one - y * y * theta.sin().powi(2) / (one + y * y - T::lit(2.0) * y * theta.cos())
}

pub fn closed_fidelity<T: Real>(class: FidelityClass, params: &ProtocolParams<T>) -> T {
    let theta = class.direction.theta(params);
    let half = theta * T::lit(0.5);
    match class.kind {
        FidelityKind::One => T::one(),
        FidelityKind::F1 => half.cos().powi(2),
        FidelityKind::F2 => half.sin().powi(2),
        FidelityKind::F3 => f3(params.alpha.x2(), theta),
    }
}

/// `1 - x^2 (1 - x^2 + 2x^4) sin^2 θ / (2 (1 - x^2 + x^4 + x^6))` with θ the
/// sender's angle.
pub fn average_fidelity<T: Real>(direction: Direction, params: &ProtocolParams<T>) -> T {
    let y = params.alpha.x2();
    let one = T::one();
    let s2 = direction.theta(params).sin().powi(2);
    let num = y * (one - y + T::lit(2.0) * y * y) * s2;
    let den = T::lit(2.0) * (one - y + y * y + y.powi(3));
    one - num / den
}

/// `Σ P_i F_i` over the given records; zero-probability cases contribute
/// nothing.
pub fn weighted_fidelity<T: Real>(direction: Direction, records: &[CaseRecord<T>]) -> T {
    records.iter().filter_map(|r| r.fidelity(direction).map(|f| r.probability * f)).fold(T::zero(), |acc, v| acc + v)
}

pub fn empirical_average_fidelity<T: Real>(direction: Direction, params: &ProtocolParams<T>) -> Result<T> {
    Ok(weighted_fidelity(direction, &enumerate_cases(params)?))
}

/// Infimum over input states of a fidelity class.
pub fn maf_closed<T: Real>(kind: FidelityKind, x2: T) -> T {
    match kind {
        FidelityKind::One => T::one(),
        FidelityKind::F1 | FidelityKind::F2 => T::zero(),
        FidelityKind::F3 => T::one() - x2 * x2,
    }
}

/// Angle at which the F3 class attains its minimum.
pub fn f3_argmin<T: Real>(x2: T) -> T {
    x2.acos()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MafResult<T> {
    pub kind: FidelityKind,
    pub closed: T,
    /// Minimum of the engine fidelity over the sender's θ.
    pub minimum: T,
    pub argmin: T,
}

/// Grid step for [`maf`].
pub const MAF_GRID_STEP: f64 = 1e-3;
/// Golden-section bracket width at which refinement stops.
pub const MAF_REFINE_TOL: f64 = 1e-9;

/// Minimum assured fidelity of one case in one direction: closed value for
/// its class and the minimum of the engine fidelity over the sender's θ
/// (other parameters held), found on a grid and refined by golden section.
pub fn maf<T: Real>(case_id: u8, direction: Direction, params: &ProtocolParams<T>) -> Result<MafResult<T>> {
    let policy = &crate::protocol::correction_policy().entries;
    let entry = policy
        .get((case_id as usize).wrapping_sub(1))
        .ok_or_else(|| Error::InvalidParameter(format!("case id {case_id} outside 1..=50")))?;
    let kind = match direction {
        Direction::AB => entry.class_ab,
        Direction::BA => entry.class_ba,
    };
    let sender = direction.sender();
    let eval = |theta: T| -> Result<T> {
        let p = params.with_theta(sender, theta)?;
        let r = run_case_by_id(&p, case_id)?;
        // Outcomes that cannot occur at this θ impose no constraint.
        Ok(r.fidelity(direction).unwrap_or_else(T::one))
    };
    let pi = T::PI();
    let steps = (std::f64::consts::PI / MAF_GRID_STEP).ceil() as usize;
    let h = pi / T::lit(steps as f64);
    let mut best = (T::zero(), eval(T::zero())?);
    for k in 1..=steps {
        let th = if k == steps { pi } else { h * T::lit(k as f64) };
        let f = eval(th)?;
        if f < best.1 {
            best = (th, f);
        }
    }
    let (lo, hi) = ((best.0 - h).max(T::zero()), (best.0 + h).min(pi));
    let (th, f) = golden_section(lo, hi, T::lit(MAF_REFINE_TOL), &eval)?;
    let (argmin, minimum) = if f < best.1 { (th, f) } else { best };
    Ok(MafResult { kind, closed: maf_closed(kind, params.alpha.x2()), minimum, argmin })
}

fn golden_section<T: Real>(mut a: T, mut b: T, tol: T, f: &dyn Fn(T) -> Result<T>) -> Result<(T, T)> {
    let r = T::lit((5f64.sqrt() - 1.0) / 2.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc < fd { (c, fc) } else { (d, fd) })
}
