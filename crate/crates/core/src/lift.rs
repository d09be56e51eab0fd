//! Polynomial maps: Jacobians, vertical and liftable fields, deformation modules.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{
    eliminate, is_zero_vector, krull_dim, krull_dim_module, minimal_generators, minimal_resolution,
    syzygies, Codim, LinearSolver, ModulePresentation, Vector,
};
use crate::logvf::{infer_weights, weights_from_constraints, VectorField};
use crate::matrix::{columns, jacobian_rows, mat_vec};
use crate::poly::{q, Exps, Poly, Ring, Q};

/// `phi : source -> target`, one polynomial in the source per target variable.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap {
    pub source: Arc<Ring>,
    pub target: Arc<Ring>,
    pub comps: Vec<Poly>,
}

/// Weights on the source making every component homogeneous, and the resulting degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapGrading {
    pub source_weights: Vec<i64>,
    pub target_degrees: Vec<i64>,
}

impl PolyMap {
    pub fn new(source: &Arc<Ring>, target: &Arc<Ring>, comps: Vec<Poly>) -> Result<PolyMap> {
        if comps.len() != target.nvars() {
            return Err(Error::Invalid(format!(
                "map into a ring with {} variables needs {} components, got {}",
                target.nvars(),
                target.nvars(),
                comps.len()
            )));
        }
        for c in &comps {
            if !c.ring().same_vars(source) {
                return Err(Error::RingMismatch(format!(
                    "component over {} but source is {}",
                    c.ring(),
                    source
                )));
            }
        }
        Ok(PolyMap {
            source: source.clone(),
            target: target.clone(),
            comps,
        })
    }

    pub fn n(&self) -> usize {
        self.source.nvars()
    }

    pub fn m(&self) -> usize {
        self.target.nvars()
    }

    /// `f o phi`.
    pub fn pullback(&self, f: &Poly) -> Result<Poly> {
        if !f.ring().same_vars(&self.target) {
            return Err(Error::RingMismatch(format!(
                "{} is not over the target ring {}",
                f,
                self.target
            )));
        }
        f.compose(&self.comps)
    }

    /// Grading making the map homogeneous; the source ring weights are preferred.
    pub fn grading(&self) -> Option<MapGrading> {
        let nonzero: Vec<Poly> = self.comps.iter().filter(|c| !c.is_zero()).cloned().collect();
        let w = if nonzero.is_empty() {
            self.source.weights().to_vec()
        } else {
            infer_weights(&nonzero)?
        };
        let target_degrees = self
            .comps
            .iter()
            .enumerate()
            .map(|(j, c)| {
                c.homogeneous_degree_for(&w)
                    .flatten()
                    .unwrap_or(self.target.weights()[j])
            })
            .collect();
        Some(MapGrading {
            source_weights: w,
            target_degrees,
        })
    }

    /// A grading of the map for which `f` on the target is also homogeneous.
    pub fn grading_for(&self, f: &Poly) -> Option<MapGrading> {
        if self.comps.iter().any(|c| c.is_zero()) {
            let g = self.grading()?;
            return f.homogeneous_degree_for(&g.target_degrees).flatten().map(|_| g);
        }
        let ring_w = self.source.weights();
        if self.comps.iter().all(|c| c.is_homogeneous()) {
            let td: Vec<i64> = self.comps.iter().map(|c| c.homogeneous_degree().unwrap_or(0)).collect();
            if f.homogeneous_degree_for(&td).is_some() {
                return Some(MapGrading {
                    source_weights: ring_w.to_vec(),
                    target_degrees: td,
                });
            }
        }
        let n = self.n();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for c in &self.comps {
            let e0 = &c.terms()[0].0;
            for (e, _) in &c.terms()[1..] {
                rows.push((0..n).map(|i| q(e[i] as i64 - e0[i] as i64)).collect());
            }
        }
        let lead: Vec<&Exps> = self.comps.iter().map(|c| &c.terms()[0].0).collect();
        if let Some((a0, _)) = f.terms().first() {
            for (a, _) in &f.terms()[1..] {
                rows.push(
                    (0..n)
                        .map(|i| {
                            let mut t = 0i64;
                            for (j, l) in lead.iter().enumerate() {
                                t += (a[j] as i64 - a0[j] as i64) * l[i] as i64;
                            }
                            q(t)
                        })
                        .collect(),
                );
            }
        }
        let used: Vec<bool> = (0..n)
            .map(|i| self.comps.iter().any(|c| c.terms().iter().any(|(e, _)| e[i] > 0)))
            .collect();
        let w = weights_from_constraints(&rows, &used)?;
        let td = self
            .comps
            .iter()
            .map(|c| c.homogeneous_degree_for(&w).flatten())
            .collect::<Option<Vec<i64>>>()?;
        Some(MapGrading {
            source_weights: w,
            target_degrees: td,
        })
    }

    /// The map over rings reweighted by `g`.
    pub fn regraded(&self, g: &MapGrading) -> Result<PolyMap> {
        let src = self.source.reweighted(&g.source_weights)?;
        let tgt = self.target.reweighted(&g.target_degrees)?;
        let comps = self.comps.iter().map(|c| c.to_ring(&src)).collect::<Result<_>>()?;
        Ok(PolyMap {
            source: src,
            target: tgt,
            comps,
        })
    }

    /// The same map over source and target rings carrying the map's grading.
    pub fn graded(&self) -> Result<(PolyMap, MapGrading)> {
        let g = self
            .grading()
            .ok_or_else(|| Error::NotGraded("no positive weights make the map homogeneous".into()))?;
        Ok((self.regraded(&g)?, g))
    }

    /// `eta o phi` as a vector over the source.
    pub fn compose_field(&self, eta: &VectorField) -> Result<Vector> {
        eta.coeffs().iter().map(|c| self.pullback(c)).collect()
    }
}

/// Jacobian matrix by rows: entry `(j, i)` is the derivative of component `j` in source variable `i`.
pub fn jacobian_matrix(phi: &PolyMap) -> Vec<Vec<Poly>> {
    jacobian_rows(&phi.comps)
}

/// Columns of the Jacobian as a presentation over the source, graded when the map is.
pub fn jacobian(phi: &PolyMap) -> Result<ModulePresentation> {
    match phi.graded() {
        Ok((gphi, g)) => {
            let cols = columns(&jacobian_matrix(&gphi));
            let rd: Vec<i64> = g.target_degrees.iter().map(|d| -d).collect();
            ModulePresentation::graded(&gphi.source, cols, rd)
        }
        Err(_) => Ok(ModulePresentation::new(&phi.source, phi.m(), columns(&jacobian_matrix(phi)))),
    }
}

/// Fields on the source annihilating every component: the syzygies of the Jacobian.
pub fn vertical_fields(phi: &PolyMap) -> Result<ModulePresentation> {
    let jp = jacobian(phi)?;
    let ring = jp.ring.clone();
    let syz = syzygies(&ring, jp.rank, &jp.gens, jp.row_degrees.as_deref())?;
    let col_deg = jp.col_degrees();
    let mins = minimal_generators(&ring, phi.n(), &syz, col_deg.as_deref())?;
    Ok(ModulePresentation {
        ring,
        rank: phi.n(),
        gens: mins,
        row_degrees: col_deg,
    })
}

/// Presentation of the cokernel of the Jacobian.
pub fn t1_presentation(phi: &PolyMap) -> Result<ModulePresentation> {
    jacobian(phi)
}

/// Ideal of maximal minors of a presentation with at least as many columns as rows.
pub fn fitting_ideal(m: &ModulePresentation) -> Vec<Poly> {
    if m.rank == 0 {
        return vec![Poly::one(&m.ring)];
    }
    crate::matrix::maximal_minors(&m.rows())
        .into_iter()
        .filter(|p| !p.is_zero())
        .collect()
}

/// Outcome of the Cohen–Macaulay codimension-two test for a cokernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmReport {
    pub holds: bool,
    pub is_zero: bool,
    pub pdim: Option<usize>,
    pub codim: Codim,
}

/// True if the cokernel is zero, or has projective dimension at most two and
/// support of codimension at least two.
pub fn cm_codim2(m: &ModulePresentation) -> Result<CmReport> {
    if !m.is_graded() {
        return Err(Error::NotGraded(
            "the Cohen-Macaulay test needs a graded presentation".into(),
        ));
    }
    let res = minimal_resolution(m)?;
    if res.is_zero_module() {
        return Ok(CmReport {
            holds: true,
            is_zero: true,
            pdim: None,
            codim: Codim::Infinite,
        });
    }
    let pdim = res.pdim();
    let dim = krull_dim_module(&m.ring, m.rank, &m.gens)?;
    let codim = Codim::from_dim(m.ring.nvars(), dim);
    Ok(CmReport {
        holds: pdim.map(|d| d <= 2).unwrap_or(true) && codim.at_least(2),
        is_zero: false,
        pdim,
        codim,
    })
}

/// A source field `xi` with `Jac(phi) xi = eta o phi`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftWitness {
    pub target_field: VectorField,
    pub source_field: VectorField,
}

impl LiftWitness {
    pub fn verify(&self, phi: &PolyMap) -> Result<bool> {
        let lhs = mat_vec(
            &phi.source,
            phi.m(),
            &columns(&jacobian_matrix(phi)),
            self.source_field.coeffs(),
        );
        let rhs = phi.compose_field(&self.target_field)?;
        Ok(lhs == rhs)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LiftOutcome {
    Lifted(LiftWitness),
    NotLiftable,
}

impl LiftOutcome {
    pub fn witness(&self) -> Option<&LiftWitness> {
        match self {
            LiftOutcome::Lifted(w) => Some(w),
            LiftOutcome::NotLiftable => None,
        }
    }
}

/// Solves lifting problems for one map, sharing the Gröbner basis.
pub struct Lifter {
    phi: PolyMap,
    solver: LinearSolver,
}

impl Lifter {
    pub fn new(phi: &PolyMap) -> Result<Lifter> {
        let jp = jacobian(phi)?;
        let solver = LinearSolver::new(&jp.ring, jp.rank, &jp.gens, jp.row_degrees.as_deref())?;
        Ok(Lifter {
            phi: phi.clone(),
            solver,
        })
    }

    pub fn lift(&mut self, eta: &VectorField) -> Result<LiftOutcome> {
        if !eta.ring().same_vars(&self.phi.target) {
            return Err(Error::RingMismatch("field is not on the target".into()));
        }
        let rhs = self.phi.compose_field(eta)?;
        match self.solver.solve(&rhs)? {
            None => Ok(LiftOutcome::NotLiftable),
            Some(xi) => {
                let xi: Vec<Poly> = xi
                    .into_iter()
                    .map(|p| p.to_ring(&self.phi.source))
                    .collect::<Result<_>>()?;
                Ok(LiftOutcome::Lifted(LiftWitness {
                    target_field: eta.clone(),
                    source_field: VectorField::new(&self.phi.source, xi)?,
                }))
            }
        }
    }
}

/// Solves `Jac(phi) xi = eta o phi`.
pub fn lift_field(phi: &PolyMap, eta: &VectorField) -> Result<LiftOutcome> {
    Lifter::new(phi)?.lift(eta)
}

/// Fields on the target that lift along `phi`, by eliminating the source
/// variables from the graph of the map.
pub fn liftable_module(phi: &PolyMap) -> Result<ModulePresentation> {
    let grading = phi.grading();
    let (sw, td) = match &grading {
        Some(g) => (g.source_weights.clone(), g.target_degrees.clone()),
        None => (phi.source.weights().to_vec(), phi.target.weights().to_vec()),
    };
    let n = phi.n();
    let m = phi.m();
    let mut names: Vec<String> = phi.source.vars().to_vec();
    for v in phi.target.vars() {
        let mut name = v.clone();
        while names.contains(&name) {
            name = format!("{name}_");
        }
        names.push(name);
    }
    let mut weights = sw.clone();
    weights.extend(td.iter().copied());
    let big = Ring::with_weights(&names, &weights)?;
    let xmap: Vec<usize> = (0..n).collect();
    let jac = jacobian_matrix(phi);
    let mut gens: Vec<Vector> = Vec::new();
    for i in 0..n {
        gens.push((0..m).map(|j| jac[j][i].embed(&big, &xmap)).collect());
    }
    for j in 0..m {
        let rel = &Poly::var(&big, n + j) - &phi.comps[j].embed(&big, &xmap);
        for k in 0..m {
            let mut v = vec![Poly::zero(&big); m];
            v[k] = rel.clone();
            gens.push(v);
        }
    }
    let mut mask = vec![false; n + m];
    for b in mask.iter_mut().take(n) {
        *b = true;
    }
    let survivors = eliminate(&big, m, &gens, &mask)?;
    let tgt = phi.target.reweighted(&td)?;
    let down: Vec<Vector> = survivors
        .iter()
        .map(|v| {
            v.iter()
                .map(|p| {
                    Poly::from_terms(
                        &tgt,
                        p.terms().iter().map(|(e, c)| (e[n..].iter().copied().collect(), c.clone())),
                    )
                })
                .collect()
        })
        .filter(|v: &Vector| !is_zero_vector(v))
        .collect();
    let rd: Vec<i64> = td.iter().map(|d| -d).collect();
    let mins = if grading.is_some() {
        minimal_generators(&tgt, m, &down, Some(&rd))?
    } else {
        minimal_generators(&tgt, m, &down, None)?
    };
    Ok(ModulePresentation {
        ring: tgt,
        rank: m,
        gens: mins,
        row_degrees: grading.map(|_| rd),
    })
}

/// Cokernel of the Jacobian augmented by the column `(w_j phi_j)`.
pub fn euler_module_n(phi: &PolyMap, weights: &[i64]) -> Result<ModulePresentation> {
    multiweight_module(phi, &weights.iter().map(|&w| vec![w]).collect::<Vec<_>>())
        .map(|m| m.presentation)
}

/// Cokernel of the Jacobian augmented by one column per weighting.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiweightModule {
    pub presentation: ModulePresentation,
    /// Some component of the map is zero.
    pub degenerate: bool,
}

/// `coker [Jac(phi) | (W_jk phi_j)_j for each column k of W]`, with `W` given by rows.
pub fn multiweight_module(phi: &PolyMap, weight_rows: &[Vec<i64>]) -> Result<MultiweightModule> {
    let m = phi.m();
    if weight_rows.len() != m {
        return Err(Error::Invalid(format!(
            "weight matrix needs {m} rows, got {}",
            weight_rows.len()
        )));
    }
    let p = weight_rows.first().map(|r| r.len()).unwrap_or(0);
    if weight_rows.iter().any(|r| r.len() != p) {
        return Err(Error::Invalid("weight matrix rows differ in length".into()));
    }
    let jp = jacobian(phi)?;
    let ring = jp.ring.clone();
    let comps: Vec<Poly> = phi.comps.iter().map(|c| c.to_ring(&ring)).collect::<Result<_>>()?;
    let mut gens = jp.gens.clone();
    for k in 0..p {
        gens.push(
            (0..m)
                .map(|j| comps[j].scale(&q(weight_rows[j][k])))
                .collect(),
        );
    }
    let pres = match &jp.row_degrees {
        Some(rd) => ModulePresentation::graded(&ring, gens, rd.clone())?,
        None => ModulePresentation::new(&ring, m, gens),
    };
    Ok(MultiweightModule {
        presentation: pres,
        degenerate: phi.comps.iter().any(|c| c.is_zero()),
    })
}

/// Codimension of the preimage of `V(ideal)` under `phi`.
pub fn preimage_codim(phi: &PolyMap, ideal: &[Poly]) -> Result<Codim> {
    let pulled: Vec<Poly> = ideal
        .iter()
        .map(|g| phi.pullback(g))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|p| !p.is_zero())
        .collect();
    if pulled.is_empty() {
        return Ok(Codim::Finite(0));
    }
    let d = krull_dim(&phi.source, &pulled)?;
    Ok(Codim::from_dim(phi.n(), d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::module_equal;
    use crate::logvf::derlog_hypersurface;
    use crate::poly::parse_poly;

    fn map(src: &[&str], tgt: &[&str], comps: &[&str]) -> PolyMap {
        let x = Ring::new(src).unwrap();
        let s = Ring::new(tgt).unwrap();
        let c = comps.iter().map(|c| parse_poly(c, &x).unwrap()).collect();
        PolyMap::new(&x, &s, c).unwrap()
    }

    fn fibres_map() -> PolyMap {
        let x = Ring::with_weights(&["x1", "x2", "s1"], &[2, 3, 4]).unwrap();
        let s = Ring::with_weights(&["s1", "s2"], &[4, 6]).unwrap();
        let comps = vec![
            parse_poly("s1", &x).unwrap(),
            parse_poly("x1^3 + x2^2 + s1*x1", &x).unwrap(),
        ];
        PolyMap::new(&x, &s, comps).unwrap()
    }

    fn space_curve_map() -> PolyMap {
        map(&["x1", "x2", "x3"], &["s1", "s2"], &["x1^2 + x2^3", "x2^2 + x1*x3"])
    }

    fn non_cm_map() -> PolyMap {
        map(&["x1", "x2", "x3"], &["s1", "s2", "s3"], &["x1*x3 + x2^2", "x2", "x3"])
    }

    fn crossing_map() -> PolyMap {
        map(
            &["x1", "x2", "x3", "x4"],
            &["s1", "s2", "s3"],
            &["x1*x3", "x2^2 - x3^3", "x2*x4"],
        )
    }

    #[test]
    fn jacobian_entries() {
        let phi = fibres_map();
        let j = jacobian_matrix(&phi);
        assert_eq!(j[1][0], parse_poly("3*x1^2 + s1", &phi.source).unwrap());
        assert_eq!(j[1][2], parse_poly("x1", &phi.source).unwrap());
        assert!(j[0][0].is_zero() && j[0][1].is_zero() && j[0][2] == Poly::one(&phi.source));
        let id = map(&["a", "b"], &["u", "v"], &["a", "b"]);
        let jp = jacobian(&id).unwrap();
        assert!(jp.is_graded());
        assert_eq!(jp.rows()[0][0], Poly::one(&id.source));
        assert!(jp.rows()[0][1].is_zero());
    }

    #[test]
    fn jacobian_of_minors_is_linear() {
        let phi = map(
            &["a1", "a2", "a3", "b1", "b2", "b3"],
            &["s1", "s2", "s3"],
            &["a2*b3 - a3*b2", "-(a1*b3 - a3*b1)", "a1*b2 - a2*b1"],
        );
        let j = jacobian_matrix(&phi);
        assert_eq!(j.len(), 3);
        assert!(j.iter().all(|r| r.len() == 6));
        assert!(j.iter().flatten().all(|p| p.is_zero() || p.total_degree() == Some(1)));
    }

    #[test]
    fn euler_field_lifts_through_fibres_map() {
        let phi = fibres_map();
        let eta = VectorField::euler(&phi.target);
        let out = lift_field(&phi, &eta).unwrap();
        let w = out.witness().expect("weighted Euler field lifts");
        assert!(w.verify(&phi).unwrap());
        // d/ds2 does not lift
        let d2 = VectorField::partial(&phi.target, 1);
        assert_eq!(lift_field(&phi, &d2).unwrap(), LiftOutcome::NotLiftable);
    }

    #[test]
    fn field_killing_the_map_lifts_to_zero() {
        let phi = map(&["x", "y"], &["s", "t"], &["x*y", "0"]);
        let eta = VectorField::new(&phi.target, vec![Poly::var(&phi.target, 1), Poly::zero(&phi.target)]).unwrap();
        let out = lift_field(&phi, &eta).unwrap();
        assert!(out.witness().unwrap().source_field.is_zero());
    }

    #[test]
    fn vertical_field_of_space_curve_map() {
        let phi = space_curve_map();
        let v = vertical_fields(&phi).unwrap();
        assert_eq!(v.gens.len(), 1);
        // signed minors of the Jacobian, deleting one column at a time
        let x = &phi.source;
        let rows = jacobian_matrix(&phi);
        let minor = |i: usize| {
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            crate::matrix::det(&rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect::<Vec<_>>())
        };
        let eta: Vec<Poly> = (0..3)
            .map(|i| if i % 2 == 0 { minor(i) } else { -&minor(i) })
            .collect();
        let g = &v.gens[0];
        let ratio = crate::poly::unit_multiple_eq(&g[0], &eta[0]).or_else(|| crate::poly::unit_multiple_eq(&g[1], &eta[1]));
        let c = ratio.expect("generator is a unit multiple of the minors field");
        for i in 0..3 {
            assert_eq!(g[i].scale(&c), eta[i]);
        }
        for f in &phi.comps {
            let applied = VectorField::new(x, g.clone()).unwrap().apply(f);
            assert!(applied.is_zero());
        }
    }

    #[test]
    fn projection_vertical_field() {
        let phi = map(&["x1", "x2"], &["s"], &["x1"]);
        let v = vertical_fields(&phi).unwrap();
        assert_eq!(v.gens.len(), 1);
        assert!(v.gens[0][0].is_zero());
        assert!(v.gens[0][1].is_constant());
    }

    #[test]
    fn t1_of_submersion_is_zero() {
        let phi = map(&["x1", "x2"], &["s"], &["x1 + x2^2"]);
        let r = cm_codim2(&t1_presentation(&phi).unwrap()).unwrap();
        assert!(r.holds && r.is_zero);
    }

    #[test]
    fn t1_of_space_curve_map_is_cm_codim_two() {
        let r = cm_codim2(&t1_presentation(&space_curve_map()).unwrap()).unwrap();
        assert!(!r.is_zero);
        assert_eq!(r.pdim, Some(2));
        assert!(r.holds);
        let n = cm_codim2(&euler_module_n(&space_curve_map(), &[1, 1]).unwrap()).unwrap();
        assert!(n.holds);
    }

    #[test]
    fn t1_not_cm_but_euler_module_is() {
        let phi = non_cm_map();
        let t1 = t1_presentation(&phi).unwrap();
        assert!(!cm_codim2(&t1).unwrap().holds);
        let n = euler_module_n(&phi, &[1, 1, 1]).unwrap();
        assert!(cm_codim2(&n).unwrap().holds);
    }

    #[test]
    fn support_codim_agrees_with_fitting_ideal() {
        for phi in [space_curve_map(), non_cm_map(), crossing_map()] {
            let t1 = t1_presentation(&phi).unwrap();
            let r = cm_codim2(&t1).unwrap();
            let fit = fitting_ideal(&t1);
            let fd = krull_dim(&t1.ring, &fit).unwrap();
            assert_eq!(r.codim, Codim::from_dim(phi.n(), fd));
        }
    }

    #[test]
    fn ungraded_input_is_rejected() {
        let r = Ring::new(&["x"]).unwrap();
        let m = ModulePresentation::new(&r, 1, vec![vec![parse_poly("x + x^2", &r).unwrap()]]);
        assert!(matches!(cm_codim2(&m), Err(Error::NotGraded(_))));
    }

    #[test]
    fn liftable_fields_of_fibres_map_are_discriminant_fields() {
        let phi = fibres_map();
        let l = liftable_module(&phi).unwrap();
        let delta = parse_poly("4*s1^3 + 27*s2^2", &l.ring).unwrap();
        let d = derlog_hypersurface(&delta).unwrap();
        assert!(module_equal(&l.ring, 2, &l.gens, &d.gens).unwrap());
        let mut lifter = Lifter::new(&phi).unwrap();
        for eta in crate::logvf::fields_of(&l) {
            let eta = eta.to_ring(&phi.target).unwrap();
            assert!(lifter.lift(&eta).unwrap().witness().unwrap().verify(&phi).unwrap());
        }
    }

    #[test]
    fn liftable_fields_of_identity_are_everything() {
        let phi = map(&["a", "b"], &["u", "v"], &["a", "b"]);
        let l = liftable_module(&phi).unwrap();
        let unit: Vec<Vector> = (0..2)
            .map(|k| (0..2).map(|j| if j == k { Poly::one(&l.ring) } else { Poly::zero(&l.ring) }).collect())
            .collect();
        assert!(module_equal(&l.ring, 2, &l.gens, &unit).unwrap());
    }

    #[test]
    fn liftable_fields_of_crossing_map() {
        let phi = crossing_map();
        let l = liftable_module(&phi).unwrap();
        let mut gb = crate::groebner::GroebnerBasis::new(&l.ring, 3, &l.gens).unwrap();
        for i in 0..3 {
            let mut v = vec![Poly::zero(&l.ring); 3];
            v[i] = Poly::var(&l.ring, i);
            assert!(gb.contains(&v).unwrap());
        }
        // not free: more than three minimal generators
        assert!(l.gens.len() > 3);
    }

    #[test]
    fn normal_crossings_kernel_is_intersection_of_log_fields() {
        let phi = crossing_map();
        let id: Vec<Vec<i64>> = (0..3).map(|j| (0..3).map(|k| (j == k) as i64).collect()).collect();
        let mw = multiweight_module(&phi, &id).unwrap();
        assert!(!mw.degenerate);
        let p = &mw.presentation;
        let syz = crate::groebner::syzygies(&p.ring, 3, &p.gens, p.row_degrees.as_deref()).unwrap();
        let fields: Vec<Vector> = syz.iter().map(|v| v[..4].to_vec()).collect();
        let h = &(&phi.comps[0] * &phi.comps[1]) * &phi.comps[2];
        let h = h.to_ring(&p.ring).unwrap();
        let d = derlog_hypersurface(&h).unwrap();
        let dg: Vec<Vector> = d.gens.iter().map(|v| v.iter().map(|c| c.to_ring(&p.ring).unwrap()).collect()).collect();
        assert!(module_equal(&p.ring, 4, &fields, &dg).unwrap());
        let single = multiweight_module(&map(&["x"], &["s"], &["x^2"]), &[vec![1]]).unwrap();
        let euler = euler_module_n(&map(&["x"], &["s"], &["x^2"]), &[1]).unwrap();
        assert_eq!(single.presentation, euler);
        let deg = multiweight_module(&map(&["x"], &["s", "t"], &["x", "0"]), &[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(deg.degenerate);
    }

    #[test]
    fn preimage_codimensions() {
        let phi = fibres_map();
        let s = &phi.target;
        let origin = vec![Poly::var(s, 0), Poly::var(s, 1)];
        assert_eq!(preimage_codim(&phi, &origin).unwrap(), Codim::Finite(2));
        assert_eq!(preimage_codim(&phi, &[Poly::one(s)]).unwrap(), Codim::Infinite);
        assert_eq!(preimage_codim(&phi, &[Poly::zero(s)]).unwrap(), Codim::Finite(0));
        let proj = map(&["x1", "x2"], &["s1"], &["x1"]);
        let s1 = Poly::var(&proj.target, 0);
        assert_eq!(preimage_codim(&proj, &[s1]).unwrap(), Codim::Finite(1));
        let minors = map(
            &["a1", "a2", "a3", "b1", "b2", "b3"],
            &["s1", "s2", "s3"],
            &["a2*b3 - a3*b2", "-(a1*b3 - a3*b1)", "a1*b2 - a2*b1"],
        );
        let t = &minors.target;
        let f = parse_poly("s1*s2*s3", t).unwrap();
        let sing = crate::logvf::singular_locus_ideal(&f).unwrap();
        assert_eq!(preimage_codim(&minors, &sing).unwrap(), Codim::Finite(2));
    }
}
