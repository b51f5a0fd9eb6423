//! One test per acceptance criterion. Each prints a single
//! `criterion N: PASS|FAIL` line and asserts the outcome.

use std::time::{Duration, Instant};

use maglab::suites::{self, DEFAULT_CASES, DEFAULT_SEED};
use maglab_core::report::VerdictReport;

fn criterion(n: u32, limit: Duration, run: impl FnOnce() -> maglab::Result<VerdictReport>) {
    let start = Instant::now();
    let r = run().unwrap_or_else(|e| panic!("criterion {n}: FAIL ({e})"));
    let took = start.elapsed();
    let fast = took < limit;
    let ok = r.all_pass() && fast;
    let detail = if ok {
        format!("{} checks in {} ms", r.checks.len(), took.as_millis())
    } else {
        let names: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
        format!("failed {names:?}, {} ms (limit {} ms)", took.as_millis(), limit.as_millis())
    };
    println!("criterion {n}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    for c in r.failures() {
        println!("    {} [{}]", c.name, c.witness);
    }
    assert!(ok, "criterion {n} failed");
}

#[test]
fn criterion_1_series_fixtures() {
    // each case also carries its own < 1 s runtime check
    criterion(1, Duration::from_secs(4), suites::series);
}

#[test]
fn criterion_2_oracle_equivalence() {
    criterion(2, Duration::from_secs(120), suites::oracle);
}

#[test]
fn criterion_3_mutant_suite() {
    criterion(3, Duration::from_secs(300), suites::mutants);
}

#[test]
fn criterion_4_isomer_suite() {
    criterion(4, Duration::from_secs(300), suites::isomers);
}

#[test]
fn criterion_5_fsolve_enumeration() {
    criterion(5, Duration::from_secs(180), || suites::fsolve(6, 30));
}

#[test]
fn criterion_6_planar_point_counts() {
    criterion(6, Duration::from_secs(30), suites::planar);
}

#[test]
fn criterion_7_euclidean_fixtures() {
    criterion(7, Duration::from_secs(30), suites::fixtures);
}

#[test]
fn criterion_8_property_suites() {
    criterion(8, Duration::from_secs(300), || suites::properties(DEFAULT_SEED, DEFAULT_CASES));
}
