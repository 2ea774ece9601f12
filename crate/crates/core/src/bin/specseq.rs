use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use specseq::params::{Case, ParamPoint};
use specseq::run::{emit_report, run_case, Format, RunOptions};

/// Verify one case of the operator complex and print a report.
#[derive(Parser, Debug)]
#[command(version)]
struct Args {
    /// free or bounce
    #[arg(long)]
    case: Case,
    /// Seed for the sampled points and synthetic trials; 0 is the reference point.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON parameter point, overriding the seed for the primary point.
    #[arg(long)]
    params: Option<PathBuf>,
    /// Fixture file replacing the bundled one.
    #[arg(long)]
    fixture: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    extra_points: usize,
    #[arg(long, default_value = "text")]
    format: Format,
    /// Number of random synthetic transfer-vs-brute-force trials.
    #[arg(long, default_value_t = 0)]
    synthetic_oracle: usize,
    /// Write the report to DIR/report-<case>.<ext> instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &PathBuf) -> Result<Vec<u8>, String> {
    std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut opts = RunOptions {
        seed: args.seed,
        extra_points: args.extra_points,
        synthetic_trials: args.synthetic_oracle,
        ..RunOptions::default()
    };
    let setup = (|| -> Result<(), String> {
        if let Some(p) = &args.params {
            let src = String::from_utf8(read(p)?).map_err(|e| e.to_string())?;
            opts.params = Some(ParamPoint::from_json(&src).map_err(|e| e.to_string())?);
        }
        if let Some(f) = &args.fixture {
            opts.fixture = Some((f.display().to_string(), read(f)?));
        }
        Ok(())
    })();
    if let Err(e) = setup {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let report = match run_case(args.case, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("aborted in {}: {}", e.section, e.source);
            return ExitCode::from(2);
        }
    };
    let body = emit_report(&report, args.format);
    match &args.out {
        Some(dir) => {
            let ext = match args.format {
                Format::Json => "json",
                Format::Text => "txt",
            };
            let path = dir.join(format!("report-{}.{ext}", args.case.name()));
            if let Err(e) = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, &body)) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
