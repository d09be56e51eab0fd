//! Free-divisor constructions as pipelines: hypothesis checks, then an assembled
//! and verified Saito basis.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{
    ideal_contains, krull_dim, minimal_generators, module_contains_all, module_equal, syzygies, Codim, LinearSolver,
    ModulePresentation, Vector,
};
use crate::lift::{
    cm_codim2, euler_module_n, jacobian_matrix, liftable_module, preimage_codim, t1_presentation,
    vertical_fields, LiftOutcome, LiftWitness, Lifter, PolyMap,
};
use crate::logvf::{
    fields_of, has_euler_like_field, infer_weights, is_free_saito, is_suspended, singular_locus_ideal,
    FreeDivisorCertificate, Freeness, Provenance, VectorField,
};
use crate::matrix::{det, det_cols};
use crate::poly::{squarefree_part, Poly, Ring};
use crate::rep::{castling_minors, matrix_vars, sl_left_fields};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Failed,
}

/// A named hypothesis with the evidence behind its status.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: Status,
    pub evidence: String,
}

impl Hypothesis {
    fn new(name: &str, ok: bool, evidence: impl Into<String>) -> Hypothesis {
        Hypothesis {
            name: name.into(),
            status: if ok { Status::Passed } else { Status::Failed },
            evidence: evidence.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Passed
    }
}

pub const H_FREE: &str = "f defines a free divisor";
pub const H_NONZERO: &str = "image not inside the divisor";
pub const H_LIFT: &str = "logarithmic fields lift";
pub const H_T1: &str = "T1 Cohen-Macaulay of codimension 2";
pub const H_T0: &str = "vertical fields free";
pub const H_SING: &str = "preimage of singular locus has codimension 2";
pub const H_HOMOG: &str = "f weighted homogeneous for the weights";
pub const H_N: &str = "N Cohen-Macaulay of codimension 2";
pub const H_EULER: &str = "Der(-log f) inside liftable fields plus Euler";
pub const H_IDEAL: &str = "ideal Cohen-Macaulay of codimension 2 or unit";
pub const H_CONTAIN: &str = "Der(-log h) inside Der(-log I)";
pub const H_UNSUSPENDED: &str = "f not suspended";

/// How a failed hypothesis is reported.
pub fn failure_message(name: &str) -> String {
    match name {
        H_T1 => "T1 not Cohen-Macaulay of codimension 2".into(),
        H_NONZERO => "image inside divisor".into(),
        H_FREE => "f does not define a free divisor".into(),
        H_LIFT => "some logarithmic field does not lift".into(),
        H_T0 => "vertical fields not free".into(),
        H_SING => "preimage of singular locus has codimension below 2".into(),
        H_HOMOG => "f not weighted homogeneous for the weights".into(),
        H_N => "N not Cohen-Macaulay of codimension 2".into(),
        H_EULER => "Der(-log f) not inside liftable fields plus Euler".into(),
        H_IDEAL => "ideal neither Cohen-Macaulay of codimension 2 nor unit".into(),
        H_CONTAIN => "Der(-log h) not inside Der(-log I)".into(),
        H_UNSUSPENDED => "f is suspended".into(),
        other => format!("{other} failed"),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Conclusion {
    Free(FreeDivisorCertificate),
    Failure(Vec<String>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineReport {
    pub pipeline: String,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: Conclusion,
    /// The divisor equation produced, when one was formed.
    pub equation: Option<Poly>,
    pub notes: Vec<String>,
}

impl PipelineReport {
    fn new(pipeline: &str) -> PipelineReport {
        PipelineReport {
            pipeline: pipeline.into(),
            hypotheses: Vec::new(),
            conclusion: Conclusion::Failure(Vec::new()),
            equation: None,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, ok: bool, evidence: impl Into<String>) -> bool {
        self.hypotheses.push(Hypothesis::new(name, ok, evidence));
        ok
    }

    fn fail(mut self, reason: impl Into<String>) -> PipelineReport {
        let mut reasons: Vec<String> = self
            .hypotheses
            .iter()
            .filter(|h| !h.passed())
            .map(|h| failure_message(&h.name))
            .collect();
        let r = reason.into();
        if !r.is_empty() && !reasons.contains(&r) {
            reasons.push(r);
        }
        self.conclusion = Conclusion::Failure(reasons);
        self
    }

    fn fail_hypotheses(self) -> PipelineReport {
        self.fail("")
    }

    pub fn succeeded(&self) -> bool {
        matches!(self.conclusion, Conclusion::Free(_))
    }

    pub fn certificate(&self) -> Option<&FreeDivisorCertificate> {
        match &self.conclusion {
            Conclusion::Free(c) => Some(c),
            Conclusion::Failure(_) => None,
        }
    }

    pub fn failures(&self) -> &[String] {
        match &self.conclusion {
            Conclusion::Failure(r) => r,
            Conclusion::Free(_) => &[],
        }
    }

    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.name == name)
    }
}

impl fmt::Display for PipelineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}:", self.pipeline)?;
        for h in &self.hypotheses {
            let mark = if h.passed() { "ok  " } else { "FAIL" };
            writeln!(f, "  [{mark}] {} ({})", h.name, h.evidence)?;
        }
        if let Some(e) = &self.equation {
            writeln!(f, "  equation: {e}")?;
        }
        match &self.conclusion {
            Conclusion::Free(c) => {
                writeln!(f, "  free divisor; det = {} * equation", c.unit)?;
                for (v, p) in c.basis.iter().zip(&c.provenance) {
                    writeln!(f, "    {:?}: {v}", p)?;
                }
            }
            Conclusion::Failure(r) => writeln!(f, "  not certified: {}", r.join("; "))?,
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

/// Hypotheses a pullback is checked against: T1 Cohen-Macaulay of codimension 2
/// (strong), or free vertical fields and a singular preimage of codimension 2 (weak).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Lifting plus Cohen-Macaulay `T1`.
    Strong,
    /// Free vertical fields, lifting, and the singular-locus codimension.
    Weak,
}

fn free_basis(f: &Poly, report: &mut PipelineReport) -> Result<Option<FreeDivisorCertificate>> {
    let res = match is_free_saito(f, false) {
        Ok(r) => r,
        Err(Error::NotHomogeneous(_)) => {
            report.notes.push("f is not weighted homogeneous; freeness checked globally".into());
            is_free_saito(f, true)?
        }
        Err(e) => return Err(e),
    };
    match res {
        Freeness::Free(c) => {
            report.check(H_FREE, true, format!("Saito basis of {} fields", c.basis.len()));
            Ok(Some(c))
        }
        Freeness::NotFree(ev) => {
            report.check(
                H_FREE,
                false,
                format!("{} minimal generators, {} expected", ev.generator_count, ev.expected),
            );
            Ok(None)
        }
    }
}

fn to_source(v: &VectorField, ring: &Arc<Ring>) -> Result<VectorField> {
    v.to_ring(ring)
}

/// Builds and verifies a certificate from fields on `ring`; `None` if the determinant test fails.
fn assemble(
    ring: &Arc<Ring>,
    equation: &Poly,
    fields: Vec<(VectorField, Provenance)>,
    germ: bool,
    notices: Vec<String>,
) -> Result<std::result::Result<FreeDivisorCertificate, String>> {
    let n = ring.nvars();
    if fields.len() != n {
        return Ok(Err(format!("basis has {} fields, {} needed", fields.len(), n)));
    }
    let cols: Vec<Vector> = fields.iter().map(|(v, _)| v.coeffs().to_vec()).collect();
    let d = det_cols(&cols);
    let Some(unit) = d.unit_multiple_of(equation) else {
        return Ok(Err(format!("determinant {d} is not a unit multiple of the equation")));
    };
    let (basis, provenance) = fields.into_iter().unzip();
    let cert = FreeDivisorCertificate {
        ring: ring.clone(),
        equation: equation.clone(),
        basis,
        unit,
        provenance,
        germ_certified: germ,
        notices,
    };
    if !cert.verify()? {
        return Ok(Err("certificate failed verification".into()));
    }
    Ok(Ok(cert))
}

/// Pulls a free divisor back along `phi` under the hypotheses selected by `mode`.
pub fn pullback_main(phi: &PolyMap, f: &Poly, mode: Mode) -> Result<PipelineReport> {
    let mut report = PipelineReport::new(match mode {
        Mode::Strong => "pullback strong",
        Mode::Weak => "pullback weak",
    });
    if !f.ring().same_vars(&phi.target) {
        return Err(Error::RingMismatch(format!("{f} is not over the target ring")));
    }
    let Some(fcert) = free_basis(f, &mut report)? else {
        return Ok(report.fail_hypotheses());
    };
    let pulled = phi.pullback(f)?;
    if !report.check(H_NONZERO, !pulled.is_zero(), if pulled.is_zero() { "f o phi = 0" } else { "f o phi != 0" }) {
        return Ok(report.fail_hypotheses());
    }
    // grading compatible with f, so the graded tests apply to germs at the origin
    let (gphi, germ) = match phi.grading_for(f) {
        Some(g) => (phi.regraded(&g)?, true),
        None => {
            report
                .notes
                .push("no grading makes both the map and f homogeneous; result is global".into());
            match phi.graded() {
                Ok((p, _)) => (p, false),
                Err(_) => (phi.clone(), false),
            }
        }
    };

    // (b) lifting every basis field of Der(-log f)
    let mut lifter = Lifter::new(&gphi)?;
    let mut lifts: Vec<LiftWitness> = Vec::new();
    let mut unlifted = Vec::new();
    for (k, eta) in fcert.basis.iter().enumerate() {
        let eta_t = eta.to_ring(&gphi.target)?;
        match lifter.lift(&eta_t)? {
            LiftOutcome::Lifted(w) => lifts.push(w),
            LiftOutcome::NotLiftable => unlifted.push(k),
        }
    }
    report.check(
        H_LIFT,
        unlifted.is_empty(),
        if unlifted.is_empty() {
            format!("{} basis fields lifted", lifts.len())
        } else {
            format!("basis fields {unlifted:?} do not lift")
        },
    );

    let vertical = vertical_fields(&gphi)?;
    match mode {
        Mode::Strong => {
            let t1 = t1_presentation(&gphi)?;
            match cm_codim2(&t1) {
                Ok(r) => {
                    let ev = if r.is_zero {
                        "T1 = 0".to_string()
                    } else {
                        format!("pdim {:?}, codim {}", r.pdim, r.codim)
                    };
                    report.check(H_T1, r.holds, ev);
                }
                Err(Error::NotGraded(m)) => {
                    report.check(H_T1, false, format!("not testable: {m}"));
                }
                Err(e) => return Err(e),
            }
        }
        Mode::Weak => {
            let syz = syzygies(&vertical.ring, vertical.rank, &vertical.gens, vertical.row_degrees.as_deref())?;
            let free = syz.is_empty();
            report.check(
                H_T0,
                free,
                format!("{} minimal generators, {} relations", vertical.gens.len(), syz.len()),
            );
            let fr = f.to_ring(&gphi.target)?;
            let sing = singular_locus_ideal(&fr)?;
            let c = preimage_codim(&gphi, &sing)?;
            report.check(H_SING, c.at_least(2), format!("codimension {c}"));
        }
    }
    if report.hypotheses.iter().any(|h| !h.passed()) {
        return Ok(report.fail_hypotheses());
    }

    let src = &phi.source;
    let mut notices = Vec::new();
    let g = squarefree_part(&pulled)?;
    if g.unit_multiple_of(&pulled).is_none() {
        notices.push(format!("f o phi is not reduced; using its squarefree part"));
    }
    report.equation = Some(g.clone());
    let mut fields: Vec<(VectorField, Provenance)> = Vec::new();
    for v in fields_of(&vertical) {
        fields.push((to_source(&v, src)?, Provenance::Vertical));
    }
    for w in &lifts {
        fields.push((to_source(&w.source_field, src)?, Provenance::Lifted));
    }
    if !germ {
        notices.push("global, not germ-certified".into());
    }
    notices.push("equation normalized as the squarefree part of f o phi".into());
    match assemble(src, &g, fields, germ, notices)? {
        Ok(cert) => {
            report.conclusion = Conclusion::Free(cert);
            Ok(report)
        }
        Err(reason) => Ok(report.fail(reason)),
    }
}

/// The Euler-field variant: `N` Cohen-Macaulay of codimension 2 and
/// `Der(-log f)` inside the liftable fields plus the Euler field.
pub fn euler_variant(phi: &PolyMap, f: &Poly, weights: &[i64]) -> Result<PipelineReport> {
    let mut report = PipelineReport::new("euler variant");
    if weights.len() != phi.m() {
        return Err(Error::Invalid(format!("need {} weights", phi.m())));
    }
    if !f.ring().same_vars(&phi.target) {
        return Err(Error::RingMismatch(format!("{f} is not over the target ring")));
    }
    let homog = f.homogeneous_degree_for(weights).flatten();
    if !report.check(H_HOMOG, homog.is_some(), format!("weights {weights:?}")) {
        return Ok(report.fail_hypotheses());
    }
    let Some(fcert) = free_basis(f, &mut report)? else {
        return Ok(report.fail_hypotheses());
    };
    let pulled = phi.pullback(f)?;
    if !report.check(H_NONZERO, !pulled.is_zero(), "f o phi") {
        return Ok(report.fail_hypotheses());
    }
    let n = euler_module_n(phi, weights)?;
    match cm_codim2(&n) {
        Ok(r) => {
            report.check(H_N, r.holds, format!("pdim {:?}, codim {}", r.pdim, r.codim));
        }
        Err(Error::NotGraded(m)) => {
            report.check(H_N, false, format!("not testable: {m}"));
        }
        Err(e) => return Err(e),
    }
    let l = liftable_module(phi)?;
    let s = &l.ring;
    let mut gens = l.gens.clone();
    gens.push(
        (0..phi.m())
            .map(|j| Poly::var(s, j).scale(&crate::poly::q(weights[j])))
            .collect(),
    );
    let want: Vec<Vector> = fcert
        .basis
        .iter()
        .map(|v| v.to_ring(s).map(|v| v.into_coeffs()))
        .collect::<Result<_>>()?;
    let inside = module_contains_all(s, phi.m(), &gens, &want)?;
    report.check(H_EULER, inside, format!("{} liftable generators plus Euler", l.gens.len()));
    if report.hypotheses.iter().any(|h| !h.passed()) {
        return Ok(report.fail_hypotheses());
    }
    let g = squarefree_part(&pulled)?;
    report.equation = Some(g.clone());
    match has_euler_like_field(&g) {
        Ok(true) => report.notes.push("f o phi has an Euler-like field".into()),
        Ok(false) => report.notes.push("f o phi has no Euler-like field".into()),
        Err(e) if e.is_budget() => return Err(e),
        Err(_) => {}
    }
    let homogeneous = infer_weights(std::slice::from_ref(&g)).is_some();
    let res = is_free_saito(&g, true)?;
    match res {
        Freeness::Free(mut c) => {
            if !homogeneous {
                report
                    .notes
                    .push("certified by a global Saito basis of the pullback".into());
                // a global basis with constant unit certifies every germ, the origin included
                c.germ_certified = true;
            }
            report.conclusion = Conclusion::Free(c);
            Ok(report)
        }
        Freeness::NotFree(ev) => Ok(report.fail(format!(
            "no Saito basis found for the pullback ({} generators)",
            ev.generator_count
        ))),
    }
}

/// `h * sum g_i y_i` on `x` and new variables `y`, with its certified basis.
pub fn ffstar(h: &Poly, g: &[Poly], new_vars: usize) -> Result<PipelineReport> {
    let mut report = PipelineReport::new("ffstar");
    if g.len() != new_vars {
        return Err(Error::Invalid(format!(
            "{} ideal generators for {new_vars} new variables",
            g.len()
        )));
    }
    if new_vars == 0 {
        return Err(Error::Invalid("need at least one new variable".into()));
    }
    let xr = h.ring().clone();
    for gi in g {
        gi.ensure_same(h)?;
    }
    let Some(hcert) = free_basis(h, &mut report)? else {
        return Ok(report.fail_hypotheses());
    };
    let m = xr.nvars();
    let n = new_vars;
    let nonzero: Vec<Poly> = g.iter().filter(|p| !p.is_zero()).cloned().collect();

    // ideal condition
    let unit = ideal_contains(&xr, &nonzero, &Poly::one(&xr))?;
    if unit {
        report.check(H_IDEAL, true, "unit ideal");
        report
            .notes
            .push("unit ideal: a change of coordinates makes this a product-union".into());
    } else {
        let w = infer_weights(&nonzero);
        let ok = match &w {
            Some(w) => {
                let wr = xr.reweighted(w)?;
                let cols: Vec<Vector> = nonzero.iter().map(|p| Ok(vec![p.to_ring(&wr)?])).collect::<Result<_>>()?;
                let pres = ModulePresentation::graded(&wr, cols, vec![0])?;
                let r = cm_codim2(&pres)?;
                report.check(H_IDEAL, r.holds, format!("pdim {:?}, codim {}", r.pdim, r.codim))
            }
            None => report.check(H_IDEAL, false, "not testable: generators not weighted homogeneous"),
        };
        if !ok {
            return Ok(report.fail_hypotheses());
        }
    }

    // gamma with eta(g_j) = sum_k gamma_jk g_k for each basis field
    let cols: Vec<Vector> = g.iter().map(|p| vec![p.clone()]).collect();
    let mut solver = LinearSolver::new(&xr, 1, &cols, None)?;
    let mut gammas: Vec<Vec<Vec<Poly>>> = Vec::new();
    let mut missing = Vec::new();
    for (a, eta) in hcert.basis.iter().enumerate() {
        let eta = eta.to_ring(&xr)?;
        let mut rows = Vec::new();
        for gj in g {
            match solver.solve(&[eta.apply(gj)])? {
                Some(sol) => rows.push(sol.into_iter().map(|p| p.to_ring(&xr)).collect::<Result<Vec<_>>>()?),
                None => {
                    missing.push(a);
                    break;
                }
            }
        }
        gammas.push(rows);
    }
    report.check(
        H_CONTAIN,
        missing.is_empty(),
        if missing.is_empty() {
            "every basis field preserves the ideal".to_string()
        } else {
            format!("basis fields {missing:?} do not preserve the ideal")
        },
    );
    if !missing.is_empty() {
        return Ok(report.fail_hypotheses());
    }

    // X = C^m x C^n
    let mut names: Vec<String> = xr.vars().to_vec();
    for i in 1..=n {
        let mut name = format!("y{i}");
        while names.contains(&name) {
            name.push('_');
        }
        names.push(name);
    }
    let big = Ring::new(&names)?;
    let xmap: Vec<usize> = (0..m).collect();
    let up = |p: &Poly| p.embed(&big, &xmap);
    let y = |i: usize| Poly::var(&big, m + i);
    let mut sum = Poly::zero(&big);
    for (i, gi) in g.iter().enumerate() {
        sum = &sum + &(&up(gi) * &y(i));
    }
    let equation = &up(h) * &sum;
    report.equation = Some(equation.clone());

    let mut fields: Vec<(VectorField, Provenance)> = Vec::new();
    // lifts of Der(-log h): sum a_i d/dx_i - sum gamma_jk y_j d/dy_k
    for (eta, gamma) in hcert.basis.iter().zip(&gammas) {
        let eta = eta.to_ring(&xr)?;
        let mut coeffs: Vec<Poly> = eta.coeffs().iter().map(up).collect();
        coeffs.extend((0..n).map(|_| Poly::zero(&big)));
        for (j, row) in gamma.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    coeffs[m + k] = &coeffs[m + k] - &(&up(c) * &y(j));
                }
            }
        }
        fields.push((VectorField::new(&big, coeffs)?, Provenance::Lifted));
    }
    // lift of t d/dt
    let mut e = vec![Poly::zero(&big); m];
    e.extend((0..n).map(y));
    fields.push((VectorField::new(&big, e)?, Provenance::Lifted));
    // vertical: syzygies of g placed on the y variables
    let syz = syzygies(&xr, 1, &cols, None)?;
    let syz = minimal_generators(&xr, n, &syz, None)?;
    for s in &syz {
        let mut c = vec![Poly::zero(&big); m];
        c.extend(s.iter().map(up));
        fields.push((VectorField::new(&big, c)?, Provenance::Vertical));
    }
    let germ = infer_weights(std::slice::from_ref(&equation)).is_some();
    let notices = vec![format!("vertical fields from syzygies of the ideal generators: {}", syz.len())];
    match assemble(&big, &equation, fields, germ, notices)? {
        Ok(cert) => {
            report.conclusion = Conclusion::Free(cert);
            Ok(report)
        }
        Err(reason) => Ok(report.fail(reason)),
    }
}

/// `ffstar` with the ideal `(J_h, h)`; the smaller variant with `J_h` alone when `h` lies in `J_h`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalReports {
    pub full: PipelineReport,
    pub jacobian_only: Option<PipelineReport>,
}

pub fn ffstar_canonical(h: &Poly) -> Result<CanonicalReports> {
    let mut g = h.gradient();
    g.push(h.clone());
    let full = ffstar(h, &g, g.len())?;
    let jac = h.gradient();
    let nonzero: Vec<Poly> = jac.iter().filter(|p| !p.is_zero()).cloned().collect();
    let jacobian_only = if ideal_contains(h.ring(), &nonzero, h)? {
        Some(ffstar(h, &jac, jac.len())?)
    } else {
        None
    };
    Ok(CanonicalReports { full, jacobian_only })
}

/// Lift of `s_p d/ds_q` along the signed maximal minors of `n x (n+1)` matrices.
fn castling_lift(ring: &Arc<Ring>, n: usize, p: usize, q: usize) -> Vec<Poly> {
    let cols = n + 1;
    let x = |i: usize, j: usize| Poly::var(ring, i * cols + j);
    let mut c = vec![Poly::zero(ring); n * cols];
    if p != q {
        for i in 0..n {
            c[i * cols + p] = -&x(i, q);
        }
    } else {
        for j in 0..cols {
            c[j] = &c[j] + &x(0, j);
        }
        for i in 0..n {
            c[i * cols + q] = &c[i * cols + q] - &x(i, q);
        }
    }
    c
}

/// Writes `a_q = sum_p s_p c_pq`, each term going to the smallest `p` whose variable divides it.
fn split_by_variables(a: &Poly) -> Option<Vec<Poly>> {
    let ring = a.ring();
    let m = ring.nvars();
    let mut parts: Vec<Vec<(crate::poly::Exps, crate::poly::Q)>> = vec![Vec::new(); m];
    for (e, c) in a.terms() {
        let p = (0..m).find(|&p| e[p] > 0)?;
        let mut e2 = e.clone();
        e2[p] -= 1;
        parts[p].push((e2, c.clone()));
    }
    Some(parts.into_iter().map(|t| Poly::from_terms(ring, t)).collect())
}

/// Pulls `f` back along the signed maximal minors `M_(n,n+1) -> C^(n+1)`.
pub fn castling(f: &Poly, n: usize) -> Result<PipelineReport> {
    let mut report = PipelineReport::new("castling");
    if n == 0 || f.ring().nvars() != n + 1 {
        return Err(Error::Invalid(format!(
            "castling with n = {n} needs f in {} variables",
            n + 1
        )));
    }
    let Some(fcert) = free_basis(f, &mut report)? else {
        return Ok(report.fail_hypotheses());
    };
    let suspended = is_suspended(f)?;
    if !report.check(
        H_UNSUSPENDED,
        !suspended,
        if suspended { "a logarithmic field has a constant term" } else { "Der(-log f) inside m T" },
    ) {
        return Ok(report.fail_hypotheses());
    }
    let xr = Ring::new(&matrix_vars("x", n, n + 1))?;
    let minors = castling_minors(&xr, n);
    let s_ring = f.ring().clone();
    let phi = PolyMap::new(&xr, &s_ring, minors)?;
    let pulled = phi.pullback(f)?;
    let g = squarefree_part(&pulled)?;
    report.equation = Some(g.clone());

    let mut fields: Vec<(VectorField, Provenance)> = sl_left_fields(&xr, n, n + 1)
        .into_iter()
        .map(|v| (v, Provenance::Vertical))
        .collect();
    let m = n + 1;
    for eta in &fcert.basis {
        let eta = eta.to_ring(&s_ring)?;
        let mut xi = vec![Poly::zero(&xr); n * m];
        for (qi, a) in eta.coeffs().iter().enumerate() {
            let parts = split_by_variables(a)
                .ok_or_else(|| Error::Precondition("logarithmic field with a constant term".into()))?;
            for (p, c) in parts.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let cphi = phi.pullback(c)?;
                for (k, l) in castling_lift(&xr, n, p, qi).iter().enumerate() {
                    if !l.is_zero() {
                        xi[k] = &xi[k] + &(&cphi * l);
                    }
                }
            }
        }
        let w = LiftWitness {
            target_field: eta.clone(),
            source_field: VectorField::new(&xr, xi)?,
        };
        if !w.verify(&phi)? {
            return Err(Error::Invalid("closed-form castling lift failed its residual check".into()));
        }
        fields.push((w.source_field, Provenance::Lifted));
    }
    report.check(H_LIFT, true, format!("{} closed-form lifts verified", fcert.basis.len()));
    let germ = infer_weights(std::slice::from_ref(&g)).is_some();
    let notices = vec![format!("{} sl_{n} fields and {} lifts", n * n - 1, m)];
    match assemble(&xr, &g, fields, germ, notices)? {
        Ok(cert) => {
            report.conclusion = Conclusion::Free(cert);
            Ok(report)
        }
        Err(reason) => Ok(report.fail(reason)),
    }
}

/// The generator `sum (-1)^i d_i d/dx_i` of the vertical fields of a map
/// `C^(n+1) -> C^n`, `d_i` the Jacobian minor without column `i`.
pub fn eta_generator(phi: &PolyMap) -> Result<VectorField> {
    let n = phi.m();
    if phi.n() != n + 1 {
        return Err(Error::Precondition(format!(
            "source needs {} variables, has {}",
            n + 1,
            phi.n()
        )));
    }
    let jac = jacobian_matrix(phi);
    let minors: Vec<Poly> = (0..=n)
        .map(|i| {
            let sub: Vec<Vec<Poly>> = jac
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, p)| p.clone()).collect())
                .collect();
            if n == 0 {
                Poly::one(&phi.source)
            } else {
                det(&sub)
            }
        })
        .collect();
    let crit: Vec<Poly> = minors.iter().filter(|p| !p.is_zero()).cloned().collect();
    let codim = if crit.is_empty() {
        Codim::Finite(0)
    } else {
        Codim::from_dim(phi.n(), krull_dim(&phi.source, &crit)?)
    };
    if codim != Codim::Finite(2) {
        return Err(Error::Precondition(format!(
            "critical locus has codimension {codim}, not 2"
        )));
    }
    let coeffs = minors
        .into_iter()
        .enumerate()
        .map(|(i, d)| if (i + 1) % 2 == 1 { -&d } else { d })
        .collect();
    let eta = VectorField::new(&phi.source, coeffs)?;
    let vertical = vertical_fields(phi)?;
    let gens: Vec<Vector> = fields_of(&vertical)
        .iter()
        .map(|v| v.to_ring(&phi.source).map(|v| v.into_coeffs()))
        .collect::<Result<_>>()?;
    if !module_equal(&phi.source, phi.n(), &gens, &[eta.coeffs().to_vec()])? {
        return Err(Error::Invalid("signed minors do not generate the vertical fields".into()));
    }
    Ok(eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, unit_multiple_eq};

    fn map(src: &[&str], tgt: &[&str], comps: &[&str]) -> PolyMap {
        let x = Ring::new(src).unwrap();
        let s = Ring::new(tgt).unwrap();
        let c = comps.iter().map(|c| parse_poly(c, &x).unwrap()).collect();
        PolyMap::new(&x, &s, c).unwrap()
    }

    #[test]
    fn identity_pullback_keeps_f() {
        let phi = map(&["a", "b"], &["u", "v"], &["a", "b"]);
        let f = parse_poly("u^2 - v^3", &phi.target).unwrap();
        for mode in [Mode::Strong, Mode::Weak] {
            let r = pullback_main(&phi, &f, mode).unwrap();
            assert!(r.succeeded(), "{r}");
            let eq = r.equation.unwrap();
            assert!(unit_multiple_eq(&eq, &parse_poly("a^2 - b^3", &phi.source).unwrap()).is_some());
        }
    }

    #[test]
    fn fibres_pullback() {
        let x = Ring::new(&["x1", "x2", "s1"]).unwrap();
        let s = Ring::new(&["s1", "s2"]).unwrap();
        let phi = PolyMap::new(
            &x,
            &s,
            vec![parse_poly("s1", &x).unwrap(), parse_poly("x1^3 + x2^2 + s1*x1", &x).unwrap()],
        )
        .unwrap();
        let f = parse_poly("4*s1^3 + 27*s2^2", &s).unwrap();
        let r = pullback_main(&phi, &f, Mode::Strong).unwrap();
        assert!(r.succeeded(), "{r}");
        let sextic = parse_poly(
            "27*x1^6 + 54*x1^3*x2^2 + 54*x1^4*s1 + 27*x2^4 + 54*x1*x2^2*s1 + 27*x1^2*s1^2 + 4*s1^3",
            &x,
        )
        .unwrap();
        let c = r.certificate().unwrap();
        assert!(unit_multiple_eq(&c.determinant(), &sextic).is_some());
        assert!(c.verify().unwrap());
        let weak = pullback_main(&phi, &f, Mode::Weak).unwrap();
        assert!(weak.succeeded(), "{weak}");
    }

    #[test]
    fn space_curve_pullback_and_eta() {
        let phi = map(&["x1", "x2", "x3"], &["s1", "s2"], &["x1^2 + x2^3", "x2^2 + x1*x3"]);
        let f = parse_poly("s1^2 - s2^3", &phi.target).unwrap();
        let r = pullback_main(&phi, &f, Mode::Strong).unwrap();
        assert!(r.succeeded(), "{r}");
        let c = r.certificate().unwrap();
        let x = &phi.source;
        let expect = parse_poly("x1*(-3*x2^4*x3 - 3*x1*x2^2*x3^2 - x1^2*x3^3 + 2*x1*x2^3 + x1^3)", x).unwrap();
        assert!(unit_multiple_eq(&c.equation, &expect).is_some());
        let eta = eta_generator(&phi).unwrap();
        let shown = vec![
            parse_poly("-3*x1*x2^2", x).unwrap(),
            parse_poly("2*x1^2", x).unwrap(),
            parse_poly("-(4*x1*x2 - 3*x2^2*x3)", x).unwrap(),
        ];
        assert_eq!(eta.coeffs(), shown.as_slice());
        let vertical: Vec<_> = c
            .basis
            .iter()
            .zip(&c.provenance)
            .filter(|(_, p)| **p == Provenance::Vertical)
            .map(|(v, _)| v.coeffs().to_vec())
            .collect();
        assert_eq!(vertical.len(), 1);
        assert!(module_equal(x, 3, &vertical, &[shown]).unwrap());
    }

    #[test]
    fn eta_of_projection_and_crossing_map() {
        let proj = map(&["x1", "x2", "x3"], &["s1", "s2"], &["x1", "x2"]);
        assert!(eta_generator(&proj).is_err(), "critical locus empty");
        let cm = map(&["x1", "x2", "x3", "x4"], &["s1", "s2", "s3"], &["x1*x3", "x2^2 - x3^3", "x2*x4"]);
        let eta = eta_generator(&cm).unwrap();
        for c in &cm.comps {
            assert!(eta.apply(c).is_zero());
        }
        assert!(!eta.is_zero());
        let line = map(&["x1", "x2"], &["s1"], &["x1"]);
        assert!(eta_generator(&line).is_err());
    }

    #[test]
    fn strong_success_implies_weak_success() {
        let cases = [
            (map(&["x1", "x2", "x3"], &["s1", "s2"], &["x1^2 + x2^3", "x2^2 + x1*x3"]), "s1^2 - s2^3"),
            (map(&["x1", "x2", "x3"], &["s1", "s2"], &["x1^2 + x2^3", "x2^2 + x1*x3"]), "s1*s2*(s1 + s2)"),
            (map(&["a", "b", "c"], &["u", "v"], &["a", "b"]), "u*v"),
        ];
        for (phi, fs) in cases {
            let f = parse_poly(fs, &phi.target).unwrap();
            let strong = pullback_main(&phi, &f, Mode::Strong).unwrap();
            if strong.succeeded() {
                let weak = pullback_main(&phi, &f, Mode::Weak).unwrap();
                assert!(weak.succeeded(), "{fs}: {weak}");
            }
        }
    }

    #[test]
    fn image_inside_divisor() {
        let phi = map(&["x"], &["s1", "s2"], &["x", "0"]);
        let f = parse_poly("s1*s2", &phi.target).unwrap();
        let r = pullback_main(&phi, &f, Mode::Strong).unwrap();
        assert_eq!(r.failures(), ["image inside divisor".to_string()]);
    }

    #[test]
    fn strong_mode_reports_t1_failure() {
        let phi = map(&["x1", "x2", "x3"], &["s1", "s2", "s3"], &["x1*x3 + x2^2", "x2", "x3"]);
        let f = parse_poly("s1*s2*s3", &phi.target).unwrap();
        let r = pullback_main(&phi, &f, Mode::Strong).unwrap();
        assert!(!r.succeeded());
        assert!(r.failures().iter().any(|m| m == "T1 not Cohen-Macaulay of codimension 2"), "{r}");
    }

    #[test]
    fn euler_variant_examples() {
        let phi = map(&["x1", "x2", "x3"], &["s1", "s2", "s3"], &["x1*x3 + x2^2", "x2", "x3"]);
        for fs in ["s1*s2*s3", "s1*s3*(s1*s3 - s2^2)"] {
            let f = parse_poly(fs, &phi.target).unwrap();
            let r = euler_variant(&phi, &f, &[1, 1, 1]).unwrap();
            assert!(r.succeeded(), "{fs}: {r}");
        }
    }

    #[test]
    fn castling_normal_crossings() {
        let s = Ring::new(&["s1", "s2", "s3"]).unwrap();
        let f = parse_poly("s1*s2*s3", &s).unwrap();
        let r = castling(&f, 2).unwrap();
        assert!(r.succeeded(), "{r}");
        let c = r.certificate().unwrap();
        assert_eq!(c.basis.len(), 6);
        assert!(c.basis.iter().all(|v| v.coeffs().iter().all(|p| p.is_zero() || p.total_degree() == Some(1))));
        let s1 = parse_poly("s1", &s).unwrap();
        let r = castling(&s1, 2).unwrap();
        assert!(!r.succeeded());
        assert_eq!(r.failures(), ["f is suspended".to_string()]);
    }

    #[test]
    fn castling_of_plane_curve_is_coordinate_change() {
        let s = Ring::new(&["s1", "s2"]).unwrap();
        let f = parse_poly("s1^2 - s2^3", &s).unwrap();
        let r = castling(&f, 1).unwrap();
        assert!(r.succeeded(), "{r}");
        let x = &r.certificate().unwrap().ring;
        let expect = parse_poly("x12^2 - x11^3", x).unwrap();
        assert!(unit_multiple_eq(r.equation.as_ref().unwrap(), &expect).is_some());
    }

    #[test]
    fn ffstar_small_cases() {
        let r = Ring::new(&["x1"]).unwrap();
        let h = parse_poly("x1", &r).unwrap();
        let c = ffstar_canonical(&h).unwrap();
        assert!(c.full.succeeded(), "{}", c.full);
        let big = &c.full.certificate().unwrap().ring;
        assert!(unit_multiple_eq(c.full.equation.as_ref().unwrap(), &parse_poly("x1*(y1 + x1*y2)", big).unwrap()).is_some());
        let r2 = Ring::new(&["x1", "x2"]).unwrap();
        let h2 = parse_poly("x1*x2", &r2).unwrap();
        let g: Vec<Poly> = ["x2", "x1", "x1*x2"].iter().map(|s| parse_poly(s, &r2).unwrap()).collect();
        let rep = ffstar(&h2, &g, 3).unwrap();
        assert!(rep.succeeded(), "{rep}");
        let c2 = ffstar_canonical(&h2).unwrap();
        assert!(c2.full.succeeded());
        assert!(c2.jacobian_only.as_ref().unwrap().succeeded());
    }
}
