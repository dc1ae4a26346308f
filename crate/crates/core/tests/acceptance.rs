//! Runs every acceptance criterion at its stated bounds and time budget,
//! printing one line per criterion. Exits non-zero if any theorem-class
//! criterion fails or runs over budget.

use std::process::ExitCode;

use clf_core::suite;

fn main() -> ExitCode {
    // `cargo test -- --list` and filters from the default harness
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        for (id, title, _, _) in suite::CRITERIA {
            println!("criterion_{id:02} {title}: test");
        }
        return ExitCode::SUCCESS;
    }
    let filter: Vec<&str> = args
        .iter()
        .filter(|a| !a.starts_with('-'))
        .map(String::as_str)
        .collect();

    let mut failed = 0;
    let mut ran = 0;
    for (id, title, _, _) in suite::CRITERIA {
        let name = format!("criterion_{id:02} {title}");
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f)) {
            continue;
        }
        ran += 1;
        match suite::run(id) {
            Ok(outcome) => {
                println!("{}", outcome.summary());
                for r in outcome.reports.iter().filter(|r| !r.passed()) {
                    println!("    {r}");
                }
                if outcome.conjecture() && !outcome.reports_pass() {
                    println!("    !!! conjecture refuted; see counterexample above !!!");
                }
                if !outcome.passed() {
                    failed += 1;
                }
            }
            Err(e) => {
                println!("[FAIL] {id} {title} (error: {e})");
                failed += 1;
            }
        }
    }
    println!("\nacceptance: {} passed, {failed} failed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
