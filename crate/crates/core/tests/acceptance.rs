//! Runs the acceptance checks at the default budget (seed 42, 10 000
//! samples) and prints one line per check. Runs without the libtest harness
//! so the lines are always shown; exits nonzero when any check fails.

use std::process::ExitCode;

use inellipse_core::lab::suite::{run_suite, SuiteConfig};

fn main() -> ExitCode {
    let report = run_suite(&SuiteConfig::default());
    for outcome in &report.outcomes {
        println!("{outcome}");
    }
    let failed: Vec<u8> = report
        .outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    println!(
        "acceptance: {}/{} passed in {:.2} s",
        report.outcomes.len() - failed.len(),
        report.outcomes.len(),
        report.seconds
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed checks: {failed:?}");
        ExitCode::FAILURE
    }
}
