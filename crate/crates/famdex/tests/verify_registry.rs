//! The full verification registry must be green on the shipped
//! configuration, under both readings of the enlargement switch.

use famdex::gammasets::BarReading;
use famdex::verify::{run_verify, Status, VerifyOptions};

#[test]
fn all_checks_pass_default_reading() {
    let report = run_verify(&VerifyOptions::default());
    let failed: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .collect();
    assert!(failed.is_empty(), "{failed:#?}");
    assert!(report.passed >= 25);
    assert!(report.informative >= 1);
}

#[test]
fn all_checks_pass_enlarged_reading() {
    let opts = VerifyOptions {
        bar_reading: BarReading::Vprime,
        ..Default::default()
    };
    let report = run_verify(&opts);
    let failed: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .collect();
    assert!(failed.is_empty(), "{failed:#?}");
}
