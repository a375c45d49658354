use cbqt_core::protocol::enumerate_cases;
use cbqt_core::reference::compare_with_policy;
use cbqt_core::Record;
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::output::{csv_bytes, emit, json_bytes, opt_real, real};
use crate::CliError;

pub const HEADER: [&str; 13] = [
    "case_id",
    "d7",
    "d8",
    "d9",
    "d10",
    "charlie",
    "probability",
    "corr_alice",
    "corr_bob",
    "fidelity_ab",
    "fidelity_ba",
    "category",
    "table1_match",
];

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let params = cfg.params()?;
    let records = enumerate_cases(&params).map_err(|e| CliError::Failure(e.to_string()))?;
    let matches: Vec<bool> = compare_with_policy()
        .iter()
        .map(|c| c.corrections_match && c.fidelity_classes_match && c.layout_match)
        .collect();
    let bytes = match cfg.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = records.iter().zip(&matches).map(|(r, &m)| csv_row(r, m)).collect();
            csv_bytes(&HEADER, &rows)?
        }
        Format::Json => {
            let rows: Vec<Value> = records.iter().zip(&matches).map(|(r, &m)| json_row(r, m)).collect();
            json_bytes(&Value::Array(rows))?
        }
    };
    emit(&bytes, cfg.out.as_deref())
}

fn csv_row(r: &Record, table1_match: bool) -> Vec<String> {
    vec![
        r.case_id.to_string(),
        r.alice_pc.first.label().into(),
        r.alice_pc.second.label().into(),
        r.bob_pc.first.label().into(),
        r.bob_pc.second.label().into(),
        r.charlie_parity.label().into(),
        real(r.probability),
        r.corr_alice.to_string(),
        r.corr_bob.to_string(),
        opt_real(r.fidelity_ab),
        opt_real(r.fidelity_ba),
        r.category.label().into(),
        table1_match.to_string(),
    ]
}

fn json_row(r: &Record, table1_match: bool) -> Value {
    json!({
        "case_id": r.case_id,
        "d7": r.alice_pc.first.label(),
        "d8": r.alice_pc.second.label(),
        "d9": r.bob_pc.first.label(),
        "d10": r.bob_pc.second.label(),
        "charlie": r.charlie_parity.label(),
        "probability": r.probability,
        "corr_alice": r.corr_alice.to_string(),
        "corr_bob": r.corr_bob.to_string(),
        "fidelity_ab": r.fidelity_ab,
        "fidelity_ba": r.fidelity_ba,
        "category": r.category.label(),
        "table1_match": table1_match,
    })
}
