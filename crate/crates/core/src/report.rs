//! Engine against closed forms and the printed table, with every
//! disagreement handed to the Fock oracle.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_form::{
    average_fidelity, closed_case_probability, closed_fidelity, weighted_fidelity, Direction, FidelityClass,
    FidelityKind,
};
use crate::error::Result;
use crate::fock::{adjudicate_with, OracleModel, Quantity, Verdict, DEFAULT_N_MAX, MAX_ORACLE_ALPHA};
use crate::protocol::{enumerate_cases, policy_reference_params, run_case_with, CaseRecord, ProtocolParams};
use crate::reference::{compare_with_policy, table_row, RowComparison};

/// Engine and closed form must agree this closely to stay out of the report.
pub const REPORT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub alpha2: f64,
    pub theta: f64,
    pub phi: f64,
    pub theta_p: f64,
    pub phi_p: f64,
}

impl From<&ProtocolParams<f64>> for ParamPoint {
    fn from(p: &ProtocolParams<f64>) -> Self {
        Self { alpha2: p.alpha2(), theta: p.theta, phi: p.phi, theta_p: p.theta_p, phi_p: p.phi_p }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub case_id: Option<u8>,
    pub param_point: ParamPoint,
    pub quantity: String,
    pub engine: f64,
    pub closed_form: f64,
    pub oracle: Option<f64>,
    pub verdict: Verdict,
}

/// Fidelity classes printed in the table, by direction.
fn table_class(case_id: u8, direction: Direction) -> FidelityKind {
    let row = table_row(case_id).expect("every case has a table row");
    match direction {
        Direction::AB => row.fidelity_bob,
        Direction::BA => row.fidelity_alice,
    }
}

struct Candidate {
    case_id: Option<u8>,
    quantity: Quantity,
    engine: f64,
    closed_form: f64,
}

fn candidates(params: &ProtocolParams<f64>, records: &[CaseRecord<f64>]) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    for r in records {
        let closed = closed_case_probability(r.case_id, params)?;
        if (r.probability - closed).abs() > REPORT_TOL {
            out.push(Candidate {
                case_id: Some(r.case_id),
                quantity: Quantity::CaseProbability(r.case_id),
                engine: r.probability,
                closed_form: closed,
            });
        }
        for direction in [Direction::AB, Direction::BA] {
            let Some(f) = r.fidelity(direction) else { continue };
            let closed = closed_fidelity(FidelityClass { kind: table_class(r.case_id, direction), direction }, params);
            if (f - closed).abs() > REPORT_TOL {
                out.push(Candidate {
                    case_id: Some(r.case_id),
                    quantity: Quantity::CaseFidelity(r.case_id, direction),
                    engine: f,
                    closed_form: closed,
                });
            }
        }
    }
    for direction in [Direction::AB, Direction::BA] {
        let engine = weighted_fidelity(direction, records);
        let closed = average_fidelity(direction, params);
        if (engine - closed).abs() > REPORT_TOL {
            out.push(Candidate {
                case_id: None,
                quantity: Quantity::AverageFidelity(direction),
                engine,
                closed_form: closed,
            });
        }
    }
    Ok(out)
}

fn adjudicated(params: &ProtocolParams<f64>, found: Vec<Candidate>, n_max: usize) -> Vec<Discrepancy> {
    if found.is_empty() {
        return Vec::new();
    }
    let model = if params.alpha.alpha() <= MAX_ORACLE_ALPHA { OracleModel::new(params, n_max).ok() } else { None };
    found
        .into_iter()
        .map(|c| {
            let (verdict, oracle) = match &model {
                Some(m) => {
                    let a = adjudicate_with(m, c.quantity, c.engine, c.closed_form);
                    (a.verdict, a.oracle)
                }
                None => (Verdict::Inconclusive, None),
            };
            Discrepancy {
                case_id: c.case_id,
                param_point: params.into(),
                quantity: c.quantity.describe(),
                engine: c.engine,
                closed_form: c.closed_form,
                oracle,
                verdict,
            }
        })
        .collect()
}

/// Compare every case probability, both fidelities and both averages with
/// their closed forms at each grid point. Grid points run in parallel; the
/// report keeps grid order.
pub fn compare_engine_vs_formulas(grid: &[ProtocolParams<f64>], n_max: usize) -> Result<Vec<Discrepancy>> {
    let per_point: Vec<Vec<Discrepancy>> = grid
        .par_iter()
        .map(|p| {
            let records = enumerate_cases(p)?;
            Ok(adjudicated(p, candidates(p, &records)?, n_max))
        })
        .collect::<Result<_>>()?;
    Ok(per_point.into_iter().flatten().collect())
}

/// A table row whose corrections differ from the derived ones, checked by
/// running the engine and the oracle with the printed corrections.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableDiscrepancy {
    pub comparison: RowComparison,
    pub param_point: ParamPoint,
    /// Fidelities (AB, BA) with the printed corrections.
    pub engine_printed: (f64, f64),
    /// Fidelities (AB, BA) with the derived corrections.
    pub engine_derived: (f64, f64),
    /// Fidelities (AB, BA) the table's classes predict.
    pub claimed: (f64, f64),
    pub oracle_printed: (Option<f64>, Option<f64>),
    /// The worse of the two directions.
    pub verdict: Verdict,
}

/// Rows where the printed corrections differ from the policy, adjudicated
/// at the policy reference point.
pub fn table_discrepancies(n_max: usize) -> Result<Vec<TableDiscrepancy>> {
    let params = policy_reference_params::<f64>();
    let model = OracleModel::new(&params, n_max)?;
    let mut out = Vec::new();
    for cmp in compare_with_policy().into_iter().filter(|c| !c.corrections_match) {
        let id = cmp.case_id;
        let printed = run_case_with(&params, id, cmp.table_alice, cmp.table_bob)?;
        let derived = run_case_with(&params, id, cmp.derived_alice, cmp.derived_bob)?;
        let pick = |r: &CaseRecord<f64>| (r.fidelity_ab.unwrap_or(f64::NAN), r.fidelity_ba.unwrap_or(f64::NAN));
        let claim = |d| closed_fidelity(FidelityClass { kind: table_class(id, d), direction: d }, &params);
        let claimed = (claim(Direction::AB), claim(Direction::BA));
        let engine_printed = pick(&printed);
        let mut verdicts = Vec::new();
        let mut oracle = [None, None];
        for (k, d) in [Direction::AB, Direction::BA].into_iter().enumerate() {
            let (e, c) = if k == 0 { (engine_printed.0, claimed.0) } else { (engine_printed.1, claimed.1) };
            let a = adjudicate_with(&model, Quantity::CorrectedFidelity(id, d, cmp.table_alice, cmp.table_bob), e, c);
            oracle[k] = a.oracle;
            verdicts.push(a.verdict);
        }
        let verdict = if verdicts.contains(&Verdict::Inconclusive) {
            Verdict::Inconclusive
        } else if verdicts.contains(&Verdict::FormulaConfirmed) {
            Verdict::FormulaConfirmed
        } else {
            Verdict::EngineConfirmed
        };
        out.push(TableDiscrepancy {
            comparison: cmp,
            param_point: (&params).into(),
            engine_printed,
            engine_derived: pick(&derived),
            claimed,
            oracle_printed: (oracle[0], oracle[1]),
            verdict,
        });
    }
    Ok(out)
}

/// Default grid for reports: small enough for the oracle.
pub fn default_grid() -> Vec<ProtocolParams<f64>> {
    let mut grid = Vec::new();
    for &a2 in &[0.5, 1.0, 2.0] {
        for &(th, thp) in &[(0.4, 2.5), (std::f64::consts::FRAC_PI_2, 1.0), (2.9, 0.2)] {
            grid.push(ProtocolParams::new(a2, th, 0.7, thp, 5.1).expect("grid point is valid"));
        }
    }
    grid
}

pub fn default_report() -> Result<Vec<Discrepancy>> {
    compare_engine_vs_formulas(&default_grid(), DEFAULT_N_MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_probability_has_no_discrepancy() {
        let grid: Vec<_> = (0..10)
            .map(|k| {
                ProtocolParams::new(0.3 + 0.2 * k as f64, 0.3 * k as f64, 0.1, 2.0 - 0.15 * k as f64, 0.2).unwrap()
            })
            .collect();
        let report = compare_engine_vs_formulas(&grid, DEFAULT_N_MAX).unwrap();
        assert!(!report.iter().any(|d| d.quantity == "probability[1]"));
    }

    #[test]
    fn perfect_cases_have_no_fidelity_discrepancy() {
        let report = default_report().unwrap();
        for id in [19u8, 21, 23, 25, 28, 30, 32, 34] {
            assert!(!report.iter().any(|d| d.case_id == Some(id) && d.quantity.starts_with("fidelity")), "case {id}");
        }
        let json = serde_json::to_string(&report).unwrap();
        let back: Vec<Discrepancy> = serde_json::from_str(&json).unwrap();
        assert_eq!(back.len(), report.len());
    }
}
