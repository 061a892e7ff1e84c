//! Release acceptance suite: runs every criterion at full size, prints one
//! pass/fail line per criterion, and fails the build if any criterion fails.

use dhg::selftest::{render, run, Level};

#[test]
fn acceptance_criteria() {
    let reports = run(Level::Full);
    print!("{}", render(&reports));
    for r in &reports {
        eprintln!("criterion {:>2} runtime: {:.2}s", r.id, r.runtime.as_secs_f64());
    }
    let failures: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("criterion {} [{}]: {}", r.id, r.name, r.detail))
        .collect();
    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}
