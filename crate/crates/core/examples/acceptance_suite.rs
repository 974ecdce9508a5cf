//! Runs the acceptance criteria and prints one line per criterion.
//!
//! ```text
//! cargo run --release --example acceptance_suite            # standard
//! cargo run --release --example acceptance_suite -- --quick
//! CCRLAB_LONG=1 cargo run --release --example acceptance_suite
//! ```

use ccr_lab::suite::{run_suite, SuiteMode};

fn main() {
    let mode = if std::env::args().any(|a| a == "--quick") {
        SuiteMode::quick()
    } else {
        SuiteMode::from_env()
    };
    let report = run_suite(&mode);
    for line in report.summary_lines() {
        println!("{line}");
    }
    println!("{} in {:.2}s", if report.pass { "all criteria pass" } else { "FAILURES" }, report.wall_clock_seconds);
    std::process::exit(if report.pass { 0 } else { 1 });
}
