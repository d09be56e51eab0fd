use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use freediv_cli::{parse_session, render_text, run, Options, OrderChoice, EXIT_PARSE};

/// Decide freeness of divisors and of their pullbacks from a session file.
#[derive(Parser, Debug)]
#[command(name = "freediv", version)]
struct Args {
    /// Session file; standard input when absent or "-".
    file: Option<PathBuf>,
    /// Print the versioned JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Monomial order for declared rings.
    #[arg(long, value_enum, default_value_t = OrderChoice::Grevlex)]
    order: OrderChoice,
    /// Accept inputs that are not weighted homogeneous; verdicts are then global.
    #[arg(long)]
    allow_nonhomogeneous: bool,
    /// Reduction steps allowed per check.
    #[arg(long, default_value_t = freediv::groebner::DEFAULT_STEP_BUDGET)]
    budget: u64,
    /// Wall-clock limit for the whole session.
    #[arg(long, value_name = "SECONDS")]
    timeout: Option<u64>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match &args.file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s).map_err(|e| e.to_string())
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("freediv: {e}");
            return ExitCode::from(EXIT_PARSE as u8);
        }
    };
    let options = Options {
        order: args.order,
        allow_nonhomogeneous: args.allow_nonhomogeneous,
        budget: args.budget,
        timeout: args.timeout,
        seed: args.seed,
        json: args.json,
    };
    let session = match parse_session(&text, &options) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("freediv: {e}");
            return ExitCode::from(EXIT_PARSE as u8);
        }
    };
    let report = run(&session);
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", render_text(&report));
    }
    ExitCode::from(report.exit_code as u8)
}
