use std::f64::consts::PI;
use std::str::FromStr;

use cbqt_core::closed_form::{
    average_fidelity, closed_probability, empirical_average_fidelity, formula_for_case, maf, maf_closed, Direction,
    FidelityKind, ProbFormulaId,
};
use cbqt_core::protocol::{correction_policy, run_case_by_id, Party};
use cbqt_core::Params;
use rayon::prelude::*;
use serde_json::json;

use crate::config::{Format, RunConfig};
use crate::output::{csv_bytes, emit, json_bytes, real};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    AvgFidelity,
    CaseProb(ProbFormulaId),
    Maf,
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "avg_fidelity" => Ok(Quantity::AvgFidelity),
            "maf" => Ok(Quantity::Maf),
            _ => match s.strip_prefix("case_prob:") {
                Some(id) => id.parse().map(Quantity::CaseProb).map_err(|e| format!("{e}")),
                None => Err(format!("unknown quantity '{s}' (avg_fidelity, case_prob:<family,branch>, maf)")),
            },
        }
    }
}

impl Quantity {
    fn label(self) -> String {
        match self {
            Quantity::AvgFidelity => "avg_fidelity".into(),
            Quantity::CaseProb(id) => format!("case_prob:{id}"),
            Quantity::Maf => "maf".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Axis {
    Alpha2,
    Theta,
}

impl Axis {
    fn label(self) -> &'static str {
        match self {
            Axis::Alpha2 => "alpha2",
            Axis::Theta => "theta",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub quantity: Quantity,
    pub axis: Axis,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub check_monotone: bool,
}

impl SweepSpec {
    fn check(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Usage(m));
        if self.steps < 2 {
            return bad(format!("steps must be at least 2, got {}", self.steps));
        }
        if !(self.from.is_finite() && self.to.is_finite() && self.from < self.to) {
            return bad(format!("range must satisfy from < to, got {}..{}", self.from, self.to));
        }
        match self.axis {
            Axis::Alpha2 if self.from <= 0.0 => bad(format!("alpha2 range must be positive, got from = {}", self.from)),
            Axis::Theta if self.from < 0.0 || self.to > PI => {
                bad(format!("theta range must lie in [0, pi], got {}..{}", self.from, self.to))
            }
            Axis::Theta if self.quantity == Quantity::Maf => {
                bad("maf is already minimised over theta; sweep it over alpha2".into())
            }
            _ => Ok(()),
        }
    }

    fn grid(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..=n)
            .map(|i| if i == n { self.to } else { self.from + (self.to - self.from) * i as f64 / n as f64 })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotone {
    Constant,
    NonDecreasing,
    NonIncreasing,
    Neither,
}

impl Monotone {
    pub fn of(values: &[f64]) -> Self {
        let up = values.windows(2).all(|w| w[1] >= w[0]);
        let down = values.windows(2).all(|w| w[1] <= w[0]);
        match (up, down) {
            (true, true) => Monotone::Constant,
            (true, false) => Monotone::NonDecreasing,
            (false, true) => Monotone::NonIncreasing,
            (false, false) => Monotone::Neither,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Monotone::Constant => "constant",
            Monotone::NonDecreasing => "non-decreasing",
            Monotone::NonIncreasing => "non-increasing",
            Monotone::Neither => "none",
        }
    }
}

fn first_case(id: ProbFormulaId) -> u8 {
    (1..=50).find(|&c| formula_for_case(c).map(|f| f == id).unwrap_or(false)).expect("every formula labels some case")
}

fn f3_case() -> u8 {
    let entries = &correction_policy().entries;
    entries.iter().position(|e| e.class_ab == FidelityKind::F3).expect("policy has F3 cases") as u8 + 1
}

/// Engine value and closed form at one point.
fn evaluate(q: Quantity, params: &Params) -> cbqt_core::Result<(f64, f64)> {
    match q {
        Quantity::AvgFidelity => {
            Ok((empirical_average_fidelity(Direction::AB, params)?, average_fidelity(Direction::AB, params)))
        }
        Quantity::CaseProb(id) => {
            Ok((run_case_by_id(params, first_case(id))?.probability, closed_probability(id, params)))
        }
        Quantity::Maf => {
            let m = maf(f3_case(), Direction::AB, params)?;
            Ok((m.minimum, maf_closed(FidelityKind::F3, params.alpha.x2())))
        }
    }
}

pub fn run(cfg: &RunConfig, spec: &SweepSpec) -> Result<(), CliError> {
    spec.check()?;
    let base = cfg.params()?;
    let grid = spec.grid();
    let values: Vec<(f64, f64)> = grid
        .par_iter()
        .map(|&v| {
            let p = match spec.axis {
                Axis::Alpha2 => base.with_alpha2(v),
                Axis::Theta => base.with_theta(Party::Alice, v),
            }?;
            evaluate(spec.quantity, &p)
        })
        .collect::<cbqt_core::Result<_>>()
        .map_err(|e| CliError::Failure(e.to_string()))?;
    let monotone = spec.check_monotone.then(|| Monotone::of(&values.iter().map(|v| v.0).collect::<Vec<_>>()));
    if let Some(m) = monotone {
        eprintln!("monotone: {}", m.label());
    }
    let bytes = match cfg.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                grid.iter().zip(&values).map(|(x, (e, c))| vec![real(*x), real(*e), real(*c)]).collect();
            let mut bytes = csv_bytes(&[spec.axis.label(), "value", "closed_form"], &rows)?;
            if let Some(m) = monotone {
                bytes.extend_from_slice(format!("# monotone={}\n", m.label()).as_bytes());
            }
            bytes
        }
        Format::Json => {
            let points: Vec<_> = grid
                .iter()
                .zip(&values)
                .map(|(x, (e, c))| json!({ spec.axis.label(): x, "value": e, "closed_form": c }))
                .collect();
            let mut doc = json!({ "axis": spec.axis.label(), "quantity": spec.quantity.label(), "points": points });
            if let Some(m) = monotone {
                doc["monotone"] = json!(m.label());
            }
            json_bytes(&doc)?
        }
    };
    emit(&bytes, cfg.out.as_deref())
}
