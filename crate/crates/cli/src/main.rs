use clap::Parser;
use qwhit_cli::{exit_code_for, run, Cli};
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(report) => {
            let text = report.to_json();
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, format!("{}\n", text)) {
                        eprintln!("error: cannot write {}: {}", path.display(), e);
                        return ExitCode::from(1);
                    }
                }
                None => {
                    // A closed pipe (e.g. `| head`) is not an error worth reporting.
                    let _ = writeln!(std::io::stdout(), "{}", text);
                }
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                for c in report.checks.iter().filter(|c| !c.passed) {
                    eprintln!(
                        "check failed: {}{}",
                        c.name,
                        c.detail.as_ref().map(|d| format!(" ({})", d)).unwrap_or_default()
                    );
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(exit_code_for(&e) as u8)
        }
    }
}
