//! Batch front end: session files in, text or JSON reports out.

pub mod report;
pub mod run;
pub mod session;

pub use report::{semantic_diff, Report};
pub use run::{render_text, run, EXIT_BUDGET, EXIT_FAIL, EXIT_PARSE, EXIT_PASS};
pub use session::{parse_session, Options, OrderChoice, Session};

/// Parses and runs `text`; parse errors become `Err` with the diagnostic.
pub fn run_text(text: &str, options: &Options) -> Result<Report, freediv::Error> {
    let session = parse_session(text, options)?;
    Ok(run(&session))
}
