//! Executes the checks of a session in order.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use freediv::construct::{castling, euler_variant, ffstar, ffstar_canonical, pullback_main, PipelineReport};
use freediv::groebner::{engine_stats, reset_engine_stats, with_limits, Limits};
use freediv::lift::{cm_codim2, liftable_module, t1_presentation};
use freediv::logvf::{derlog_hypersurface, is_free_saito, Freeness};
use freediv::rep::{invariants_of_degree, stabilizer_dim};
use freediv::{Error, Result};

use crate::report::{
    CertificateJson, CommandReport, CommandResult, Outcome, PipelineJson, Report, RingJson, Stats, SCHEMA,
    SCHEMA_VERSION,
};
use crate::session::{Check, Command, Options, Session};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub fn run(session: &Session) -> Report {
    let opts = &session.options;
    let start = Instant::now();
    let deadline = opts.timeout.map(Duration::from_secs);
    let mut commands = Vec::new();
    for check in session.checks() {
        let remaining = deadline.map(|d| d.saturating_sub(start.elapsed()));
        commands.push(run_check(check, opts, remaining));
    }
    let exit_code = if commands.iter().any(|c| c.outcome == Outcome::Budget) {
        EXIT_BUDGET
    } else if commands.iter().any(|c| c.outcome == Outcome::Fail) {
        EXIT_FAIL
    } else {
        EXIT_PASS
    };
    Report {
        schema: SCHEMA.into(),
        version: SCHEMA_VERSION,
        options: opts.clone(),
        commands,
        exit_code,
    }
}

fn run_check(check: &Check, opts: &Options, remaining: Option<Duration>) -> CommandReport {
    reset_engine_stats();
    let t = Instant::now();
    let out = if remaining == Some(Duration::ZERO) {
        Err(Error::Timeout(Duration::from_secs(opts.timeout.unwrap_or(0))))
    } else {
        let limits = Limits {
            max_steps: opts.budget,
            timeout: remaining,
        };
        with_limits(limits, || execute(&check.command, opts))
    };
    let elapsed = t.elapsed();
    let s = engine_stats();
    let (outcome, result) = match out {
        Ok((passed, r)) => (if passed { Outcome::Pass } else { Outcome::Fail }, r),
        Err(e) => (
            if e.is_budget() { Outcome::Budget } else { Outcome::Fail },
            CommandResult::Error { message: e.to_string() },
        ),
    };
    CommandReport {
        line: check.line,
        command: check.text.clone(),
        outcome,
        stats: Stats {
            s_pairs: s.s_pairs,
            reduction_steps: s.reduction_steps,
            elapsed_us: elapsed.as_micros() as u64,
        },
        result,
    }
}

fn pipeline(r: PipelineReport) -> (bool, CommandResult) {
    (r.succeeded(), CommandResult::Pipeline(PipelineJson::of(&r)))
}

fn execute(cmd: &Command, opts: &Options) -> Result<(bool, CommandResult)> {
    Ok(match cmd {
        Command::Derlog { f } => {
            let m = derlog_hypersurface(f)?;
            (true, CommandResult::fields(&m.ring, &m.gens))
        }
        Command::Free { f } => match is_free_saito(f, opts.allow_nonhomogeneous) {
            Ok(Freeness::Free(c)) => (
                true,
                CommandResult::Freeness {
                    free: true,
                    certificate: Some(CertificateJson::of(&c)),
                    generator_count: Some(c.basis.len()),
                    expected: Some(c.ring.nvars()),
                },
            ),
            Ok(Freeness::NotFree(ev)) => (
                false,
                CommandResult::Freeness {
                    free: false,
                    certificate: None,
                    generator_count: Some(ev.generator_count),
                    expected: Some(ev.expected),
                },
            ),
            Err(Error::NotHomogeneous(m)) => {
                return Err(Error::NotHomogeneous(format!(
                    "{m}; rerun with --allow-nonhomogeneous for a global verdict"
                )))
            }
            Err(e) => return Err(e),
        },
        Command::Pullback { mode, map, f } => pipeline(pullback_main(map, f, *mode)?),
        Command::EulerLift { map, f, weights } => pipeline(euler_variant(map, f, weights)?),
        Command::Ffstar { h, g: Some(g) } => pipeline(ffstar(h, g, g.len())?),
        Command::Ffstar { h, g: None } => {
            let c = ffstar_canonical(h)?;
            let ok = c.full.succeeded() && c.jacobian_only.as_ref().is_none_or(|r| r.succeeded());
            (
                ok,
                CommandResult::Canonical {
                    full: PipelineJson::of(&c.full),
                    jacobian_only: c.jacobian_only.as_ref().map(PipelineJson::of),
                },
            )
        }
        Command::Castling { f, n } => pipeline(castling(f, *n)?),
        Command::Liftable { map } => {
            let m = liftable_module(map)?;
            (true, CommandResult::fields(&m.ring, &m.gens))
        }
        Command::T1 { map } => {
            let r = cm_codim2(&t1_presentation(map)?)?;
            (r.holds, CommandResult::cohen_macaulay(&r))
        }
        Command::Invariants { rep, degree } => {
            let polys = invariants_of_degree(rep, *degree)?;
            (
                true,
                CommandResult::Invariants {
                    ring: RingJson::of(&rep.ring),
                    degree: *degree,
                    polys: polys.iter().map(|p| p.to_string()).collect(),
                },
            )
        }
        Command::Stabilizer { rep } => (true, CommandResult::stabilizer(&stabilizer_dim(rep, opts.seed))),
    })
}

fn fmt_field(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

fn write_certificate(out: &mut String, c: &CertificateJson) {
    let _ = writeln!(out, "    free divisor on [{}]: {}", c.ring.vars.join(", "), c.equation);
    let _ = writeln!(out, "    det(basis) = {} * equation", c.unit);
    for (v, p) in c.basis.iter().zip(&c.provenance) {
        let _ = writeln!(out, "      {p:>8}: {}", fmt_field(v));
    }
    if !c.germ_certified {
        let _ = writeln!(out, "    global certificate only");
    }
    for n in &c.notices {
        let _ = writeln!(out, "    notice: {n}");
    }
}

fn write_pipeline(out: &mut String, p: &PipelineJson, indent: &str) {
    let _ = writeln!(out, "{indent}{}", p.pipeline);
    for h in &p.hypotheses {
        let mark = if h.passed { "ok  " } else { "FAIL" };
        let _ = writeln!(out, "{indent}  [{mark}] {} ({})", h.name, h.evidence);
    }
    if let Some(c) = &p.certificate {
        write_certificate(out, c);
    } else if let Some(e) = &p.equation {
        let _ = writeln!(out, "{indent}  equation: {e}");
    }
    for f in &p.failures {
        let _ = writeln!(out, "{indent}  failure: {f}");
    }
    for n in &p.notes {
        let _ = writeln!(out, "{indent}  note: {n}");
    }
}

/// Human-readable rendering of a report.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    if report.commands.is_empty() {
        out.push_str("empty session\n");
    }
    for c in &report.commands {
        let tag = match c.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Budget => "BUDGET",
        };
        let _ = writeln!(
            out,
            "[{tag}] line {}: check {} ({:.3} s, {} S-pairs, {} reduction steps)",
            c.line,
            c.command,
            c.stats.elapsed_us as f64 / 1e6,
            c.stats.s_pairs,
            c.stats.reduction_steps
        );
        match &c.result {
            CommandResult::Pipeline(p) => write_pipeline(&mut out, p, "  "),
            CommandResult::Canonical { full, jacobian_only } => {
                write_pipeline(&mut out, full, "  ");
                if let Some(j) = jacobian_only {
                    let _ = writeln!(out, "  variant with the Jacobian ideal alone:");
                    write_pipeline(&mut out, j, "  ");
                }
            }
            CommandResult::Freeness {
                free,
                certificate,
                generator_count,
                expected,
            } => {
                if let Some(cert) = certificate {
                    write_certificate(&mut out, cert);
                } else if !free {
                    let _ = writeln!(
                        out,
                        "    not free: {} minimal generators, {} expected",
                        generator_count.unwrap_or(0),
                        expected.unwrap_or(0)
                    );
                }
            }
            CommandResult::Fields { ring, generators } => {
                let _ = writeln!(out, "    {} generators over [{}]", generators.len(), ring.vars.join(", "));
                for g in generators {
                    let _ = writeln!(out, "      {}", fmt_field(g));
                }
            }
            CommandResult::CohenMacaulay {
                holds,
                is_zero,
                pdim,
                codim,
            } => {
                let pd = pdim.map(|p| p.to_string()).unwrap_or_else(|| "?".into());
                let _ = writeln!(
                    out,
                    "    {}: zero={is_zero}, pdim={pd}, codim={codim}",
                    if *holds {
                        "Cohen-Macaulay of codimension 2"
                    } else {
                        "not Cohen-Macaulay of codimension 2"
                    }
                );
            }
            CommandResult::Invariants { degree, polys, .. } => {
                let _ = writeln!(out, "    {} invariants of degree {degree}", polys.len());
                for p in polys {
                    let _ = writeln!(out, "      {p}");
                }
            }
            CommandResult::Stabilizer {
                dim,
                algebra_dim,
                generic_rank,
                seed,
            } => {
                let _ = writeln!(
                    out,
                    "    generic stabilizer dimension {dim} (algebra {algebra_dim}, orbit {generic_rank}, seed {seed})"
                );
            }
            CommandResult::Error { message } => {
                let _ = writeln!(out, "    error: {message}");
            }
        }
    }
    let _ = writeln!(out, "exit code {}", report.exit_code);
    out
}
