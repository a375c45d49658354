use cbqt_core::closed_form::{average_fidelity, weighted_fidelity, Direction, FidelityKind};
use cbqt_core::fock::{OracleModel, Verdict, MAX_ORACLE_ALPHA, ORACLE_TOL};
use cbqt_core::measurement::project_mode;
use cbqt_core::optics::apply_bs_ps;
use cbqt_core::protocol::{correction_policy, enumerate_cases, BS_ALICE};
use cbqt_core::report::{compare_engine_vs_formulas, default_grid, table_discrepancies, Discrepancy, TableDiscrepancy};
use cbqt_core::{Amplitude, CoherentTerm, Mode, Params, PcOutcome, Record, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::output::{emit, json_bytes};
use crate::CliError;

const UNITARITY_TOL: f64 = 1e-12;
const UNITARITY_DRAWS: usize = 256;
const SEED: u64 = 0x00c0_ffee;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Self { name, passed, detail }
    }

    fn error(name: &'static str, e: impl std::fmt::Display) -> Self {
        Self { name, passed: false, detail: e.to_string() }
    }
}

struct Point {
    params: Params,
    records: Vec<Record>,
}

fn completeness(points: &[Point], tol: f64) -> Check {
    let worst =
        points.iter().map(|p| (p.records.iter().map(|r| r.probability).sum::<f64>() - 1.0).abs()).fold(0.0, f64::max);
    Check::new("completeness", worst <= tol, format!("max |sum P - 1| = {worst:.3e} over {} points", points.len()))
}

fn random_state(rng: &mut ChaCha8Rng) -> State {
    let n = rng.gen_range(1..=3);
    let terms = (0..n)
        .map(|_| {
            let c = Amplitude::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let amps = (0..2)
                .map(|_| {
                    let (r, t) = (rng.gen_range(0.0..2.0), rng.gen_range(0.0..std::f64::consts::TAU));
                    Amplitude::from_polar(r, t)
                })
                .collect();
            CoherentTerm::new(c, amps)
        })
        .collect();
    State::new(vec![Mode(0), Mode(2)], terms).expect("two distinct modes")
}

fn unitarity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst_bs = 0.0f64;
    let mut worst_proj = 0.0f64;
    for _ in 0..UNITARITY_DRAWS {
        let (a, b) = (random_state(&mut rng), random_state(&mut rng));
        let result = (|| -> cbqt_core::Result<(f64, f64)> {
            let before = a.inner_product(&b)?;
            let (ta, tb) = (apply_bs_ps(&a, &BS_ALICE)?, apply_bs_ps(&b, &BS_ALICE)?);
            let bs = (before - ta.inner_product(&tb)?).norm() / (1.0 + before.norm());
            let n = ta.norm_sqr();
            let mut total = 0.0;
            for o in [PcOutcome::Vacuum, PcOutcome::Nze, PcOutcome::Odd] {
                total += project_mode(&ta, Mode(7), o)?.norm_sqr();
            }
            Ok((bs, (total - n).abs() / n.max(f64::MIN_POSITIVE)))
        })();
        match result {
            Ok((bs, proj)) => {
                worst_bs = worst_bs.max(bs);
                worst_proj = worst_proj.max(proj);
            }
            Err(e) => return Check::error("unitarity", e),
        }
    }
    let passed = worst_bs <= UNITARITY_TOL && worst_proj <= UNITARITY_TOL;
    Check::new(
        "unitarity",
        passed,
        format!("{UNITARITY_DRAWS} draws: beam splitter {worst_bs:.3e}, projector completeness {worst_proj:.3e}"),
    )
}

fn oracle_equivalence(cfg: &RunConfig, config_point: &Point) -> Check {
    let name = "oracle_equivalence";
    let limit = MAX_ORACLE_ALPHA * MAX_ORACLE_ALPHA;
    let (params, records) = if config_point.params.alpha.alpha() <= MAX_ORACLE_ALPHA {
        (config_point.params, config_point.records.clone())
    } else {
        let p = match config_point.params.with_alpha2(limit) {
            Ok(p) => p,
            Err(e) => return Check::error(name, e),
        };
        match enumerate_cases(&p) {
            Ok(r) => (p, r),
            Err(e) => return Check::error(name, e),
        }
    };
    let model = match OracleModel::new(&params, cfg.n_max) {
        Ok(m) => m,
        Err(e) => return Check::error(name, e),
    };
    let tol = ORACLE_TOL + 10.0 * model.defect;
    let mut worst = 0.0f64;
    for r in &records {
        let o = match model.case(r.case_id) {
            Ok(o) => o,
            Err(e) => return Check::error(name, e),
        };
        worst = worst.max((o.probability - r.probability).abs());
        for (a, b) in [(o.fidelity_ab, r.fidelity_ab), (o.fidelity_ba, r.fidelity_ba)] {
            if let (Some(a), Some(b)) = (a, b) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    Check::new(
        name,
        worst <= tol,
        format!(
            "alpha2 = {:.6}, n_max = {}: max deviation {worst:.3e} (tolerance {tol:.1e})",
            params.alpha2(),
            cfg.n_max
        ),
    )
}

fn perfect_cases(points: &[Point], tol: f64) -> Check {
    let ids: Vec<u8> = correction_policy()
        .entries
        .iter()
        .enumerate()
        .filter(|(_, e)| e.class_ab == FidelityKind::One && e.class_ba == FidelityKind::One)
        .map(|(i, _)| i as u8 + 1)
        .collect();
    let mut worst = 0.0f64;
    for p in points {
        for &id in &ids {
            let r = &p.records[id as usize - 1];
            for f in [r.fidelity_ab, r.fidelity_ba].into_iter().flatten() {
                worst = worst.max((1.0 - f).abs());
            }
        }
    }
    Check::new(
        "fidelity_one_cases",
        worst <= tol && !ids.is_empty(),
        format!("cases {ids:?}: max |1 - F| = {worst:.3e}"),
    )
}

fn average_fidelity_check(points: &[Point], tol: f64) -> Check {
    let mut worst = 0.0f64;
    for p in points {
        for d in [Direction::AB, Direction::BA] {
            worst = worst.max((weighted_fidelity(d, &p.records) - average_fidelity(d, &p.params)).abs());
        }
    }
    Check::new("average_fidelity", worst <= tol, format!("max |sum P F - closed form| = {worst:.3e}"))
}

fn ledger_check(engine: &[Discrepancy], table: &[TableDiscrepancy]) -> Check {
    let count =
        |v: Verdict| engine.iter().filter(|d| d.verdict == v).count() + table.iter().filter(|d| d.verdict == v).count();
    let against = count(Verdict::FormulaConfirmed);
    Check::new(
        "discrepancy_ledger",
        against == 0,
        format!(
            "{} entries: {} engine confirmed, {} formula confirmed, {} inconclusive",
            engine.len() + table.len(),
            count(Verdict::EngineConfirmed),
            against,
            count(Verdict::Inconclusive)
        ),
    )
}

pub struct Outcome {
    pub checks: Vec<Check>,
    pub document: Value,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn evaluate(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let config_params = cfg.params()?;
    let mut grid = vec![config_params];
    grid.extend(default_grid());
    let points: Vec<Point> = grid
        .par_iter()
        .map(|&params| enumerate_cases(&params).map(|records| Point { params, records }))
        .collect::<cbqt_core::Result<_>>()
        .map_err(|e| CliError::Failure(e.to_string()))?;

    let mut checks = vec![
        completeness(&points, cfg.tol),
        unitarity(),
        oracle_equivalence(cfg, &points[0]),
        perfect_cases(&points, cfg.tol),
        average_fidelity_check(&points, cfg.tol),
    ];
    let mut errors = Vec::new();
    let engine = compare_engine_vs_formulas(&grid, cfg.n_max).unwrap_or_else(|e| {
        errors.push(e.to_string());
        Vec::new()
    });
    let table = table_discrepancies(cfg.n_max).unwrap_or_else(|e| {
        errors.push(e.to_string());
        Vec::new()
    });
    let mut ledger = ledger_check(&engine, &table);
    if !errors.is_empty() {
        ledger.passed = false;
        ledger.detail = format!("{}; {}", ledger.detail, errors.join("; "));
    }
    checks.push(ledger);

    let passed = checks.iter().all(|c| c.passed);
    let document = json!({
        "passed": passed,
        "config": {
            "alpha2": cfg.alpha2,
            "theta": cfg.theta,
            "phi": cfg.phi,
            "theta_p": cfg.theta_p,
            "phi_p": cfg.phi_p,
            "n_max": cfg.n_max,
            "tol": cfg.tol,
        },
        "checks": checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect::<Vec<_>>(),
        "discrepancies": serde_json::to_value(&engine).map_err(|e| CliError::Failure(e.to_string()))?,
        "table_discrepancies": serde_json::to_value(&table).map_err(|e| CliError::Failure(e.to_string()))?,
        "errors": errors,
    });
    Ok(Outcome { checks, document })
}

/// Report on stderr, ledger as JSON on stdout or `--out`.
pub fn run(cfg: &RunConfig) -> Result<bool, CliError> {
    let outcome = evaluate(cfg)?;
    for c in &outcome.checks {
        eprintln!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    let passed = outcome.passed();
    eprintln!("validate: {}", if passed { "PASS" } else { "FAIL" });
    emit(&json_bytes(&outcome.document)?, cfg.out.as_deref())?;
    Ok(passed)
}
