use std::process::{Command, Output};

fn cbqt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbqt")).args(args).output().expect("binary runs")
}

fn cbqt_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbqt")).args(args).env(key, value).output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn rows(bytes: &[u8]) -> (csv::StringRecord, Vec<csv::StringRecord>) {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(bytes);
    let header = r.headers().unwrap().clone();
    (header, r.records().map(Result::unwrap).collect())
}

#[test]
fn case_table_census() {
    let o = cbqt(&["cases"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = rows(&o.stdout);
    assert_eq!(header.len(), 13);
    assert_eq!(&header[12], "table1_match");
    assert_eq!(rows.len(), 50);
    let total: f64 = rows.iter().map(|r| r[6].parse::<f64>().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-9);
    let count = |c: &str| rows.iter().filter(|r| &r[11] == c).count();
    assert_eq!((count("FAILURE"), count("UNIDIRECTIONAL"), count("BIDIRECTIONAL")), (2, 16, 32));
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r[0].parse::<usize>().unwrap(), i + 1);
    }
}

#[test]
fn csv_round_trips() {
    let o = cbqt(&["cases", "--alpha2", "0.7", "--theta", "2.0"]);
    let (header, parsed) = rows(&o.stdout);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).unwrap();
    for r in &parsed {
        let reparsed: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, f)| match i {
                6 | 9 | 10 if !f.is_empty() => format!("{:.16e}", f.parse::<f64>().unwrap()),
                _ => f.to_string(),
            })
            .collect();
        w.write_record(&reparsed).unwrap();
    }
    assert_eq!(w.into_inner().unwrap(), o.stdout);
}

#[test]
fn outputs_are_byte_identical() {
    let args = ["cases", "--alpha2", "1.3", "--theta-p", "0.4"];
    let a = cbqt(&args);
    let b = cbqt(&args);
    let c = cbqt_env(&args, "CBQT_THREADS", "1");
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let sweep = ["sweep", "--quantity", "avg_fidelity", "--axis", "theta", "--from", "0", "--to", "3", "--steps", "9"];
    assert_eq!(cbqt(&sweep).stdout, cbqt_env(&sweep, "CBQT_THREADS", "2").stdout);
}

#[test]
fn json_cases() {
    let o = cbqt(&["cases", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 50);
    assert_eq!(arr[18]["fidelity_ab"].as_f64().unwrap(), 1.0);
    assert_eq!(arr[0]["category"], "FAILURE");
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    let out = dir.path().join("cases.csv");
    std::fs::write(&cfg, "# test config\nalpha2 = 1.0\ntheta = 0.0   # Alice sends |alpha>\nformat = csv\n").unwrap();
    let o = cbqt(&["cases", "--config", cfg.to_str().unwrap(), "--theta", "1.0", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let from_file = std::fs::read(&out).unwrap();
    let direct = cbqt(&["cases", "--alpha2", "1.0", "--theta", "1.0"]).stdout;
    assert_eq!(from_file, direct);
    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(cbqt(&["cases", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn validate_passes_by_default() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ledger.json");
    let o = cbqt(&["validate", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("validate: PASS"));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    for n in [
        "completeness",
        "unitarity",
        "oracle_equivalence",
        "fidelity_one_cases",
        "average_fidelity",
        "discrepancy_ledger",
    ] {
        assert!(names.contains(&n), "{n}");
    }
    for d in v["discrepancies"].as_array().unwrap() {
        assert!(d["quantity"].is_string() && d["engine"].is_number() && d["closed_form"].is_number());
        assert!(["ENGINE_CONFIRMED", "FORMULA_CONFIRMED", "INCONCLUSIVE"].contains(&d["verdict"].as_str().unwrap()));
        assert!(d["param_point"]["alpha2"].is_number());
    }
    assert!(!v["table_discrepancies"].as_array().unwrap().is_empty());
    assert_eq!(v["config"]["n_max"], 40);
}

#[test]
fn validate_small_cutoff_fails() {
    let o = cbqt(&["validate", "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("CUTOFF_TOO_SMALL"));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn bad_input_exits_2() {
    for args in [
        vec!["cases", "--format", "xml"],
        vec!["cases", "--alpha2", "0"],
        vec!["cases", "--tol", "-1"],
        vec!["cases", "--theta", "4"],
        vec!["cases", "--bogus"],
        vec!["frobnicate"],
        vec!["sweep", "--quantity", "avg_fidelity", "--axis", "alpha2", "--from", "1", "--to", "2", "--steps", "1"],
        vec!["sweep", "--quantity", "avg_fidelity", "--axis", "alpha2", "--from", "2", "--to", "1"],
        vec!["sweep", "--quantity", "avg_fidelity", "--axis", "theta", "--from", "0", "--to", "4"],
        vec!["sweep", "--quantity", "case_prob:X,+", "--axis", "alpha2", "--from", "1", "--to", "2"],
        vec!["sweep", "--quantity", "maf", "--axis", "theta", "--from", "0", "--to", "1"],
    ] {
        assert_eq!(cbqt(&args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(cbqt_env(&["cases"], "CBQT_THREADS", "0").status.code(), Some(2));
}

fn sweep_values(args: &[&str]) -> Vec<(f64, f64, f64)> {
    let o = cbqt(args);
    assert!(o.status.success(), "{}", stderr(&o));
    let (_, rows) = rows(&o.stdout);
    rows.iter().map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap(), r[2].parse().unwrap())).collect()
}

#[test]
fn fidelity_sweeps() {
    let flat = sweep_values(&[
        "sweep",
        "--quantity",
        "avg_fidelity",
        "--axis",
        "alpha2",
        "--from",
        "0.2",
        "--to",
        "4",
        "--steps",
        "9",
        "--theta",
        "0",
    ]);
    assert!(flat.iter().all(|&(_, v, c)| (v - 1.0).abs() < 1e-12 && c == 1.0));
    let high = sweep_values(&[
        "sweep",
        "--quantity",
        "avg_fidelity",
        "--axis",
        "alpha2",
        "--from",
        "2",
        "--to",
        "6",
        "--steps",
        "9",
    ]);
    assert!(high.iter().all(|&(_, v, _)| v >= 0.99));
    let theta = sweep_values(&[
        "sweep",
        "--quantity",
        "avg_fidelity",
        "--axis",
        "theta",
        "--from",
        "0",
        "--to",
        "3.14159",
        "--steps",
        "5",
    ]);
    assert!((theta[2].1 - 0.9908391).abs() < 1e-4);
    let maf =
        sweep_values(&["sweep", "--quantity", "maf", "--axis", "alpha2", "--from", "1", "--to", "3", "--steps", "3"]);
    for (a2, v, c) in maf {
        assert!((v - c).abs() < 1e-9);
        assert!((c - (1.0 - (-4.0 * a2).exp())).abs() < 1e-15);
    }
}

#[test]
fn failure_probability_sweep() {
    let args = [
        "sweep",
        "--quantity",
        "case_prob:I,+",
        "--axis",
        "alpha2",
        "--from",
        "1",
        "--to",
        "3",
        "--steps",
        "5",
        "--theta",
        "0",
        "--theta-p",
        "0",
        "--check-monotone",
    ];
    let o = cbqt(&args);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.ends_with("# monotone=non-increasing\n"), "{text}");
    let pts = sweep_values(&args);
    let at2 = pts.iter().find(|p| p.0 == 2.0).unwrap();
    assert!((at2.1 - 6.8e-4).abs() < 0.05e-4, "{}", at2.1);
    assert!((at2.1 - at2.2).abs() < 1e-12);
    let json = cbqt(&[
        "sweep",
        "--quantity",
        "case_prob:I+",
        "--axis",
        "alpha2",
        "--from",
        "1",
        "--to",
        "2",
        "--steps",
        "2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["quantity"], "case_prob:I,+");
    assert_eq!(v["points"].as_array().unwrap().len(), 2);
}
