//! Runs every acceptance criterion and prints one line per criterion.
//! Built without the libtest harness so the lines are never captured.

use std::process::ExitCode;

use fzkit::acceptance::{run, DEFAULT_SEED};

fn main() -> ExitCode {
    let reports = run(None, DEFAULT_SEED);
    for r in &reports {
        println!("{r} ({} ms of {} ms)", r.elapsed_ms, r.budget_ms);
    }
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| r.id.to_string()).collect();
    if reports.len() != 10 || !failed.is_empty() {
        println!("acceptance: FAILED criteria: {}", failed.join(", "));
        return ExitCode::FAILURE;
    }
    println!("acceptance: {} of {} criteria passed", reports.len(), reports.len());
    ExitCode::SUCCESS
}
