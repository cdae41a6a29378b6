//! Acceptance suite: one PASS/FAIL line per criterion, with wall time.
//! Runs without the libtest harness so the lines always reach the terminal.

use std::process::ExitCode;
use std::time::Instant;

use jordan_core::suite::{Group, Status, Suite, DEFAULT_SEED};

fn main() -> ExitCode {
    let seed = std::env::var("JORDAN_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let suite = Suite::new(seed);
    let start = Instant::now();
    let mut failed = 0;
    println!("acceptance (seed {seed})");
    for &id in Group::All.ids() {
        let o = suite.run(id);
        let limit = o.limit.map_or(String::new(), |l| format!(" / limit {}s", l.as_secs()));
        println!("{} [{:.2}s{limit}]", o.line(), o.elapsed.as_secs_f64());
        if o.status == Status::Fail {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.1}s", Group::All.ids().len() - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
