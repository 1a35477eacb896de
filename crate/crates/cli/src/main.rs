use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use defcomplex::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = report.render();
    let written = if cli.output == "-" {
        std::io::stdout().write_all(text.as_bytes())
    } else {
        std::fs::write(&cli.output, text.as_bytes())
    };
    if let Err(e) = written {
        eprintln!("error: {}: {e}", cli.output);
        return ExitCode::from(3);
    }
    ExitCode::from(report.status.exit_code() as u8)
}
