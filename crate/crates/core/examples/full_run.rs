//! The whole pipeline for one case, printed as the text report.
//!
//!     cargo run --example full_run -- bounce 42

use specseq::params::Case;
use specseq::run::{emit_report, run_case, Format, RunOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let case: Case = args.next().as_deref().unwrap_or("free").parse().expect("case is free or bounce");
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let opts = RunOptions { seed, ..RunOptions::default() };
    match run_case(case, &opts) {
        Ok(report) => print!("{}", emit_report(&report, Format::Text)),
        Err(e) => {
            eprintln!("aborted: {e}");
            std::process::exit(2);
        }
    }
}
