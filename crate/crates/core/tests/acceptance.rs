//! Runs every acceptance criterion in sequence and prints one line each.
//! Sequential on purpose: the runtime limits are measured per criterion.

use std::process::ExitCode;

use semifield_core::acceptance;

fn main() -> ExitCode {
    let mut failed = 0;
    for id in acceptance::ids() {
        let report = acceptance::run(id).expect("known criterion");
        println!("{}", report.line());
        failed += !report.passed as usize;
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        acceptance::ids().len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
