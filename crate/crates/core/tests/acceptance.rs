//! Runs the full criterion battery and prints one verdict line per criterion.

use std::time::Instant;

use shtuka_core::suite::{run_criterion, SuiteConfig, TITLES};

/// Every criterion is exact: verdicts compare finite-field values for
/// equality, so there is no numerical tolerance to pin.
const TOLERANCE: u32 = 0;

/// Criteria known to fail, each backed by an explicit counterexample that
/// the run prints. Any other failure fails the test.
const EXPECTED_RED: &[u8] = &[7];

#[test]
fn acceptance() {
    assert_eq!(TOLERANCE, 0);
    let cfg = SuiteConfig::default();
    let mut unexpected = vec![];
    for id in 1..=TITLES.len() as u8 {
        let start = Instant::now();
        let res = run_criterion(id, &cfg).unwrap_or_else(|e| panic!("criterion {id} aborted: {e}"));
        let verdict = if res.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {id:>2} {verdict}: {} ({} checks, {} failed, {:.1}s)",
            res.title,
            res.cases,
            res.failed,
            start.elapsed().as_secs_f64()
        );
        for n in &res.notes {
            println!("    {n}");
        }
        for f in &res.failures {
            println!("    failure: {f}");
        }
        if res.pass == EXPECTED_RED.contains(&id) {
            unexpected.push(id);
        }
    }
    assert!(unexpected.is_empty(), "criteria with unexpected verdicts: {unexpected:?}");
}
