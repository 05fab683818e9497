//! One line per acceptance criterion, then the negative control and a subset
//! run. Exits nonzero if anything is off.

use std::process::ExitCode;
use std::sync::Arc;

use trigonal::algebra::{GenusPoly, RingPresentation};
use trigonal::chow::GENERATORS;
use trigonal::verify::{check_class_w_in, run_all, CHECKS};

fn main() -> ExitCode {
    let mut ok = true;

    let outcomes = run_all(None).expect("all checks are known");
    assert_eq!(outcomes.len(), CHECKS.len());
    for o in &outcomes {
        println!("{}", o.line());
        ok &= o.passed;
    }

    // μ1² ↦ c1·μ1 + c2 instead of c1·μ1 − c2 must break the class of W
    let broken = RingPresentation::new(&GENERATORS, 3)
        .and_then(|p| {
            p.with_rule(
                "mu1",
                2,
                &[(GenusPoly::int(1), &[("c1", 1), ("mu1", 1)]), (GenusPoly::int(1), &[("c2", 1)])],
            )
        })
        .expect("well-formed rule");
    let control = check_class_w_in(&Arc::new(broken)).expect("known check");
    let caught = !control.passed;
    println!(
        "[{}] negative control, corrupted rewrite rule rejected: {}",
        if caught { "PASS" } else { "FAIL" },
        control.detail
    );
    ok &= caught;

    let subset = run_all(Some(&["picard".to_string()])).expect("known check");
    let subset_ok = subset.len() == 1 && subset[0].index == 3 && subset[0].passed;
    println!(
        "[{}] subset run of the picard check only",
        if subset_ok { "PASS" } else { "FAIL" }
    );
    ok &= subset_ok;

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
