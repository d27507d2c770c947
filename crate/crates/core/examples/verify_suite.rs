//! Runs the self-verification suite; pass `full` for the long level.

use sparsest::verify::{verify_paper, Level, VerifyConfig};

fn main() {
    let level = match std::env::args().nth(1).as_deref() {
        Some("full") => Level::Full,
        _ => Level::Smoke,
    };
    let report = verify_paper(&VerifyConfig { level, ..Default::default() });
    for c in &report.criteria {
        println!("{:>2} {:<5} {:>7} ms  {}", c.id, if c.passed { "pass" } else { "FAIL" }, c.elapsed_ms, c.title);
    }
    std::process::exit(if report.passed { 0 } else { 1 });
}
