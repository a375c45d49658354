use std::f64::consts::{FRAC_PI_2, PI};

use cbqt_core::closed_form::{closed_fidelity, f3, Direction, FidelityClass, FidelityKind};
use cbqt_core::protocol::{
    apply_correction, case_layout, correction_policy, enumerate_cases, fidelity, interfered_state, raw_case, run_case,
    run_case_by_id, Correction, DetectorPair, Parity, UnitaryOp, ALICE_OUTPUT, BOB_OUTPUT,
};
use cbqt_core::{AlphaParams, Category, Params};

fn p(alpha2: f64, theta: f64, theta_p: f64) -> Params {
    Params::new(alpha2, theta, 0.6, theta_p, 4.4).unwrap()
}

#[test]
fn mirror_symmetry() {
    let params = p(1.3, 0.7, 2.4);
    let swapped = params.swapped();
    let a = enumerate_cases(&params).unwrap();
    let b = enumerate_cases(&swapped).unwrap();
    for spec in case_layout() {
        let m = spec.mirror();
        let (ra, rb) = (&a[spec.id as usize - 1], &b[m.id as usize - 1]);
        assert!((ra.probability - rb.probability).abs() < 1e-14, "case {} vs {}", spec.id, m.id);
        let (fa, fb) = (ra.fidelity_ab.unwrap(), rb.fidelity_ba.unwrap());
        assert!((fa - fb).abs() < 1e-12, "case {} vs {}", spec.id, m.id);
    }
}

#[test]
fn stuck_party_holds_a_cat_state() {
    // When Bob's detectors stay dark his qubit never leaves, and Alice holds
    // |+> or |-> depending on Charlie; the fidelity is then |B+|^2 or |B-|^2.
    let params = p(2.0, 1.1, 0.9);
    let records = enumerate_cases(&params).unwrap();
    let b = params.bob_coeffs();
    for r in records.iter().filter(|r| r.category == Category::Unidirectional && r.bob_pc.is_dark()) {
        let f = r.fidelity_ba.unwrap();
        let ok = (f - b.plus.norm_sqr()).abs() < 1e-12 || (f - b.minus.norm_sqr()).abs() < 1e-12;
        assert!(ok, "case {}: {f}", r.case_id);
    }
}

#[test]
fn f3_cases_match_the_closed_form() {
    let params = p(0.8, 1.9, 0.5);
    let records = enumerate_cases(&params).unwrap();
    let policy = correction_policy();
    let mut seen = 0;
    for r in &records {
        let e = policy.entries[r.case_id as usize - 1];
        for (kind, direction, f) in
            [(e.class_ab, Direction::AB, r.fidelity_ab), (e.class_ba, Direction::BA, r.fidelity_ba)]
        {
            let expect = closed_fidelity(FidelityClass { kind, direction }, &params);
            assert!((f.unwrap() - expect).abs() < 1e-12, "case {} {direction:?}", r.case_id);
            seen += (kind == FidelityKind::F3) as usize;
        }
    }
    assert!(seen > 0);
    assert!(
        (f3(params.alpha.x2(), 1.9)
            - closed_fidelity(FidelityClass { kind: FidelityKind::F3, direction: Direction::AB }, &params))
        .abs()
            < 1e-15
    );
}

#[test]
fn record_fields_follow_the_layout() {
    let params = p(1.0, 1.0, 2.0);
    let r = run_case(&params, DetectorPair::NZE_SECOND, DetectorPair::ODD_FIRST, Parity::Odd).unwrap();
    assert_eq!(r.case_id, 40);
    assert_eq!(r.category, Category::Bidirectional);
    assert_eq!(r.state_alice.as_ref().unwrap().modes(), &[ALICE_OUTPUT]);
    assert_eq!(r.state_bob.as_ref().unwrap().modes(), &[BOB_OUTPUT]);
    let direct = run_case_by_id(&params, 40).unwrap();
    assert_eq!(direct, r);
}

#[test]
fn impossible_outcomes_are_kept_with_zero_probability() {
    // Alice sends |-> exactly: the all-dark even outcome needs a |+> component.
    let params = Params::new(1.0, PI, 0.0, 0.0, 0.0).unwrap();
    let records = enumerate_cases(&params).unwrap();
    assert_eq!(records.len(), 50);
    let r1 = &records[0];
    assert_eq!(r1.probability, 0.0);
    assert!(r1.fidelity_ab.is_none() && r1.state_bob.is_none());
    let total: f64 = records.iter().map(|r| r.probability).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn enumeration_is_deterministic() {
    let params = p(1.7, FRAC_PI_2, 0.3);
    let a = enumerate_cases(&params).unwrap();
    let b = enumerate_cases(&params).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.probability.to_bits(), y.probability.to_bits());
        assert_eq!(x.fidelity_ab.map(f64::to_bits), y.fidelity_ab.map(f64::to_bits));
    }
}

#[test]
fn received_f3_state_after_u1() {
    // Bob's raw state in case 20 is |B3>-like; U1 brings it to F3 of Alice's input.
    let params = p(1.2, 2.0, 1.0);
    let psi = interfered_state(&params).unwrap();
    let spec = case_layout()[19];
    let raw = raw_case(&psi, &params, spec).unwrap();
    let (_, bob) = raw.states.unwrap();
    let corrected = apply_correction(&bob, Correction::new(UnitaryOp::U1), &params.alpha).unwrap();
    let target = cbqt_core::algebra::from_cat_coeffs(&params.alice_coeffs(), &params.alpha, BOB_OUTPUT);
    let f = fidelity(&target, &corrected).unwrap();
    let expect = closed_fidelity(FidelityClass { kind: FidelityKind::F3, direction: Direction::AB }, &params);
    assert!((f - expect).abs() < 1e-12);
}

#[test]
fn unitaries_square_to_plus_or_minus_identity() {
    let alpha = AlphaParams::new(1.0f64).unwrap();
    let c = params_coeffs();
    for op in UnitaryOp::ALL {
        let twice = op.act(op.act(c));
        let sign = if op == UnitaryOp::U2 { -1.0 } else { 1.0 };
        assert!((twice.plus - c.plus * sign).norm() < 1e-15 && (twice.minus - c.minus * sign).norm() < 1e-15);
    }
    assert!(alpha.x2() > 0.0);
}

fn params_coeffs() -> cbqt_core::CatCoeffs<f64> {
    p(1.0, 1.3, 0.2).alice_coeffs()
}
