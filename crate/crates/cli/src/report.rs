//! Versioned machine-readable report and its semantic comparison.

use std::sync::Arc;

use freediv::construct::{Conclusion, PipelineReport, Status};
use freediv::groebner::{module_equal, Vector};
use freediv::lift::CmReport;
use freediv::logvf::{FreeDivisorCertificate, Provenance, VectorField};
use freediv::poly::{parse_poly, unit_multiple_eq, Poly, Ring};
use freediv::rep::StabilizerDim;
use serde::{Deserialize, Serialize};

use crate::session::Options;

pub const SCHEMA: &str = "freediv.report";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub version: u32,
    pub options: Options,
    pub commands: Vec<CommandReport>,
    pub exit_code: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// Step budget or time limit exhausted.
    Budget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub s_pairs: u64,
    pub reduction_steps: u64,
    pub elapsed_us: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommandReport {
    pub line: usize,
    pub command: String,
    pub outcome: Outcome,
    pub stats: Stats,
    pub result: CommandResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub vars: Vec<String>,
    pub weights: Vec<i64>,
}

impl RingJson {
    pub fn of(r: &Ring) -> RingJson {
        RingJson {
            vars: r.vars().to_vec(),
            weights: r.weights().to_vec(),
        }
    }

    pub fn ring(&self) -> Result<Arc<Ring>, String> {
        Ring::with_weights(&self.vars, &self.weights).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub ring: RingJson,
    pub equation: String,
    /// `det(basis) = unit * equation`.
    pub unit: String,
    /// One entry per field, each the list of its coefficients.
    pub basis: Vec<Vec<String>>,
    pub provenance: Vec<String>,
    pub germ_certified: bool,
    pub notices: Vec<String>,
}

impl CertificateJson {
    pub fn of(c: &FreeDivisorCertificate) -> CertificateJson {
        CertificateJson {
            ring: RingJson::of(&c.ring),
            equation: c.equation.to_string(),
            unit: c.unit.to_string(),
            basis: c.basis.iter().map(field_strings).collect(),
            provenance: c
                .provenance
                .iter()
                .map(|p| {
                    match p {
                        Provenance::Vertical => "vertical",
                        Provenance::Lifted => "lifted",
                        Provenance::Direct => "direct",
                    }
                    .to_string()
                })
                .collect(),
            germ_certified: c.germ_certified,
            notices: c.notices.clone(),
        }
    }
}

fn field_strings(v: &VectorField) -> Vec<String> {
    v.coeffs().iter().map(|p| p.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisJson {
    pub name: String,
    pub passed: bool,
    pub evidence: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineJson {
    pub pipeline: String,
    pub hypotheses: Vec<HypothesisJson>,
    pub equation: Option<String>,
    pub certificate: Option<CertificateJson>,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl PipelineJson {
    pub fn of(r: &PipelineReport) -> PipelineJson {
        let (certificate, failures) = match &r.conclusion {
            Conclusion::Free(c) => (Some(CertificateJson::of(c)), Vec::new()),
            Conclusion::Failure(f) => (None, f.clone()),
        };
        PipelineJson {
            pipeline: r.pipeline.clone(),
            hypotheses: r
                .hypotheses
                .iter()
                .map(|h| HypothesisJson {
                    name: h.name.clone(),
                    passed: h.status == Status::Passed,
                    evidence: h.evidence.clone(),
                })
                .collect(),
            equation: r.equation.as_ref().map(|p| p.to_string()),
            certificate,
            failures,
            notes: r.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CommandResult {
    Pipeline(PipelineJson),
    Canonical {
        full: PipelineJson,
        jacobian_only: Option<PipelineJson>,
    },
    Freeness {
        free: bool,
        certificate: Option<CertificateJson>,
        generator_count: Option<usize>,
        expected: Option<usize>,
    },
    /// Generators of a module of vector fields (logarithmic or liftable).
    Fields {
        ring: RingJson,
        generators: Vec<Vec<String>>,
    },
    CohenMacaulay {
        holds: bool,
        is_zero: bool,
        pdim: Option<usize>,
        codim: String,
    },
    Invariants {
        ring: RingJson,
        degree: usize,
        polys: Vec<String>,
    },
    Stabilizer {
        dim: usize,
        algebra_dim: usize,
        generic_rank: usize,
        seed: u64,
    },
    Error {
        message: String,
    },
}

impl CommandResult {
    pub fn fields(ring: &Ring, gens: &[Vector]) -> CommandResult {
        CommandResult::Fields {
            ring: RingJson::of(ring),
            generators: gens.iter().map(|v| v.iter().map(|p| p.to_string()).collect()).collect(),
        }
    }

    pub fn cohen_macaulay(r: &CmReport) -> CommandResult {
        CommandResult::CohenMacaulay {
            holds: r.holds,
            is_zero: r.is_zero,
            pdim: r.pdim,
            codim: r.codim.to_string(),
        }
    }

    pub fn stabilizer(s: &StabilizerDim) -> CommandResult {
        CommandResult::Stabilizer {
            dim: s.dim,
            algebra_dim: s.algebra_dim,
            generic_rank: s.generic_rank,
            seed: s.seed,
        }
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Report, String> {
        let r: Report = serde_json::from_str(s).map_err(|e| e.to_string())?;
        if r.schema != SCHEMA {
            return Err(format!("unknown schema {:?}", r.schema));
        }
        if r.version != SCHEMA_VERSION {
            return Err(format!("unsupported schema version {}", r.version));
        }
        Ok(r)
    }
}

/// Compares reports up to unit multiples of polynomials and equality of
/// generated modules; timings, statistics and evidence strings are ignored.
pub fn semantic_diff(expected: &Report, actual: &Report) -> Result<(), String> {
    if expected.exit_code != actual.exit_code {
        return Err(format!("exit code {} vs {}", expected.exit_code, actual.exit_code));
    }
    if expected.commands.len() != actual.commands.len() {
        return Err(format!(
            "{} commands vs {}",
            expected.commands.len(),
            actual.commands.len()
        ));
    }
    for (e, a) in expected.commands.iter().zip(&actual.commands) {
        let ctx = |m: String| format!("line {} ({}): {m}", e.line, e.command);
        if e.command != a.command || e.outcome != a.outcome {
            return Err(ctx(format!("{:?} vs {:?}", e.outcome, a.outcome)));
        }
        result_diff(&e.result, &a.result).map_err(ctx)?;
    }
    Ok(())
}

fn poly_in(ring: &Arc<Ring>, s: &str) -> Result<Poly, String> {
    parse_poly(s, ring).map_err(|e| format!("{s:?}: {e}"))
}

fn same_poly(ring: &RingJson, a: &str, b: &str) -> Result<(), String> {
    let r = ring.ring()?;
    let (pa, pb) = (poly_in(&r, a)?, poly_in(&r, b)?);
    if pa.is_zero() && pb.is_zero() || unit_multiple_eq(&pa, &pb).is_some() {
        Ok(())
    } else {
        Err(format!("{a} and {b} differ by more than a unit"))
    }
}

fn vectors(ring: &Arc<Ring>, gens: &[Vec<String>]) -> Result<Vec<Vector>, String> {
    gens.iter()
        .map(|v| v.iter().map(|s| poly_in(ring, s)).collect())
        .collect()
}

fn same_module(ring: &RingJson, a: &[Vec<String>], b: &[Vec<String>]) -> Result<(), String> {
    let r = ring.ring()?;
    let rank = r.nvars();
    let (va, vb) = (vectors(&r, a)?, vectors(&r, b)?);
    if va.iter().chain(&vb).any(|v| v.len() != rank) {
        return Err("field of the wrong length".into());
    }
    match module_equal(&r, rank, &va, &vb) {
        Ok(true) => Ok(()),
        Ok(false) => Err("generated modules differ".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn cert_diff(e: &CertificateJson, a: &CertificateJson) -> Result<(), String> {
    if e.ring.vars != a.ring.vars {
        return Err(format!("rings {:?} vs {:?}", e.ring.vars, a.ring.vars));
    }
    same_poly(&e.ring, &e.equation, &a.equation)?;
    if e.basis.len() != a.basis.len() {
        return Err(format!("basis sizes {} vs {}", e.basis.len(), a.basis.len()));
    }
    same_module(&e.ring, &e.basis, &a.basis)
}

fn opt_cert_diff(e: &Option<CertificateJson>, a: &Option<CertificateJson>) -> Result<(), String> {
    match (e, a) {
        (None, None) => Ok(()),
        (Some(e), Some(a)) => cert_diff(e, a),
        _ => Err("certificate present in only one report".into()),
    }
}

fn pipeline_diff(e: &PipelineJson, a: &PipelineJson) -> Result<(), String> {
    if e.pipeline != a.pipeline {
        return Err(format!("pipeline {} vs {}", e.pipeline, a.pipeline));
    }
    let hyp = |p: &PipelineJson| p.hypotheses.iter().map(|h| (h.name.clone(), h.passed)).collect::<Vec<_>>();
    if hyp(e) != hyp(a) {
        return Err(format!("hypotheses {:?} vs {:?}", hyp(e), hyp(a)));
    }
    if e.failures != a.failures {
        return Err(format!("failures {:?} vs {:?}", e.failures, a.failures));
    }
    opt_cert_diff(&e.certificate, &a.certificate)
}

fn result_diff(e: &CommandResult, a: &CommandResult) -> Result<(), String> {
    use CommandResult as R;
    match (e, a) {
        (R::Pipeline(x), R::Pipeline(y)) => pipeline_diff(x, y),
        (
            R::Canonical {
                full: f1,
                jacobian_only: j1,
            },
            R::Canonical {
                full: f2,
                jacobian_only: j2,
            },
        ) => {
            pipeline_diff(f1, f2)?;
            match (j1, j2) {
                (None, None) => Ok(()),
                (Some(x), Some(y)) => pipeline_diff(x, y),
                _ => Err("variant present in only one report".into()),
            }
        }
        (
            R::Freeness {
                free: f1,
                certificate: c1,
                ..
            },
            R::Freeness {
                free: f2,
                certificate: c2,
                ..
            },
        ) => {
            if f1 != f2 {
                return Err(format!("free {f1} vs {f2}"));
            }
            opt_cert_diff(c1, c2)
        }
        (
            R::Fields {
                ring: r1,
                generators: g1,
            },
            R::Fields {
                ring: r2,
                generators: g2,
            },
        ) => {
            if r1.vars != r2.vars {
                return Err("different rings".into());
            }
            same_module(r1, g1, g2)
        }
        (
            R::Invariants {
                ring: r1,
                degree: d1,
                polys: p1,
            },
            R::Invariants { degree: d2, polys: p2, .. },
        ) => {
            if d1 != d2 || p1.len() != p2.len() {
                return Err("invariant counts differ".into());
            }
            for (x, y) in p1.iter().zip(p2) {
                same_poly(r1, x, y)?;
            }
            Ok(())
        }
        (R::Error { .. }, R::Error { .. }) => Ok(()),
        (x, y) if x == y => Ok(()),
        (x, y) => Err(format!("{x:?} vs {y:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            schema: SCHEMA.into(),
            version: SCHEMA_VERSION,
            options: Options::default(),
            commands: vec![CommandReport {
                line: 3,
                command: "derlog f".into(),
                outcome: Outcome::Pass,
                stats: Stats {
                    s_pairs: 4,
                    reduction_steps: 17,
                    elapsed_us: 120,
                },
                result: CommandResult::Fields {
                    ring: RingJson {
                        vars: vec!["a".into(), "b".into()],
                        weights: vec![3, 2],
                    },
                    generators: vec![vec!["2*a".into(), "3*b".into()], vec!["-3*b^2".into(), "a".into()]],
                },
            }],
            exit_code: 0,
        }
    }

    #[test]
    fn json_round_trips() {
        let r = sample();
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn version_is_checked() {
        let mut r = sample();
        r.version = 99;
        assert!(Report::from_json(&r.to_json()).is_err());
    }

    #[test]
    fn comparison_is_semantic() {
        let a = sample();
        let mut b = sample();
        b.commands[0].stats.elapsed_us = 9;
        if let CommandResult::Fields { generators, .. } = &mut b.commands[0].result {
            // a different generating set of the same module
            generators[1] = vec!["-3*b^2 + 2*a".into(), "a + 3*b".into()];
            generators[0] = vec!["-4*a".into(), "-6*b".into()];
        }
        semantic_diff(&a, &b).unwrap();
        if let CommandResult::Fields { generators, .. } = &mut b.commands[0].result {
            generators.pop();
        }
        assert!(semantic_diff(&a, &b).is_err());
    }
}
