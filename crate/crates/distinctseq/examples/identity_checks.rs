//! Runs the fast identity tier programmatically: exact oracle agreement,
//! moment identities, monotone error terms.

use distinctseq::cli::verify::{format_report, run_verify, VerifyLevel};
use distinctseq::oracle::DEFAULT_BUDGET;

fn main() {
    let checks = run_verify(VerifyLevel::Fast, DEFAULT_BUDGET);
    let (report, all_passed) = format_report(&checks);
    print!("{report}");
    std::process::exit(if all_passed { 0 } else { 1 });
}
