//! Acceptance criteria 1–8, one test each. Every test prints a single
//! `criterion N (...): PASS|FAIL` line; run with `--nocapture` to see them.
//!
//! The profile defaults to `full`; set `WEYL_BIANCHI_PROFILE=quick` for a
//! faster pass.

use std::sync::Mutex;

use weyl_bianchi::harness::validation::{run_criterion, DEFAULT_SEED};
use weyl_bianchi::harness::Profile;

// Criteria are timed, so they run one at a time.
static SERIAL: Mutex<()> = Mutex::new(());

fn check(id: u8) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let profile = std::env::var("WEYL_BIANCHI_PROFILE")
        .ok()
        .and_then(|p| p.parse().ok())
        .unwrap_or(Profile::Full);
    let report = run_criterion(id, profile, DEFAULT_SEED).unwrap();
    println!("{}", report.summary());
    for (k, v) in &report.measured {
        println!("    {k} = {v:.6e}");
    }
    assert!(report.passed, "{}", report.summary());
}

#[test]
fn criterion_1_unitarity_and_composition() {
    check(1);
}

#[test]
fn criterion_2_rw_exactness() {
    check(2);
}

#[test]
fn criterion_3_stiff_exactness() {
    check(3);
}

#[test]
fn criterion_4_short_time_order() {
    check(4);
}

#[test]
fn criterion_5_delta_to_one_continuity() {
    check(5);
}

#[test]
fn criterion_6_asymptotic_matching() {
    check(6);
}

#[test]
fn criterion_7_dyson_convergence() {
    check(7);
}

#[test]
fn criterion_8_special_functions() {
    check(8);
}
