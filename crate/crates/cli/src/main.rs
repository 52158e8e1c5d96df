use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

/// Run a galdesc document and print its report.
#[derive(Parser)]
#[command(name = "galdesc", version)]
struct Args {
    /// Also run brute-force oracle checks and print PASS/FAIL lines.
    #[arg(long)]
    oracle: bool,
    /// Input document; standard input when omitted.
    file: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match &args.file {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read input: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = galdesc_cli::run_text(&text, galdesc_cli::Options { oracle: args.oracle });
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
