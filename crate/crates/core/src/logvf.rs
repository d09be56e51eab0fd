//! Logarithmic vector fields along hypersurfaces and ideals, and freeness tests.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{
    ideal_basis, ideal_contains, intersect_ideals, is_zero_vector, kernel_of_map, krull_dim, minimal_generators, minimal_resolution,
    syzygies, Codim, ModulePresentation, Vector,
};
use crate::linalg;
use crate::matrix::{det_cols, subsets};
use crate::poly::{squarefree_part, Poly, Ring, Q};

/// `sum a_i d/dx_i` on a polynomial ring.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    ring: Arc<Ring>,
    coeffs: Vec<Poly>,
}

impl VectorField {
    pub fn new(ring: &Arc<Ring>, coeffs: Vec<Poly>) -> Result<VectorField> {
        if coeffs.len() != ring.nvars() {
            return Err(Error::Invalid(format!(
                "vector field needs {} coefficients, got {}",
                ring.nvars(),
                coeffs.len()
            )));
        }
        for c in &coeffs {
            if !c.ring().same_vars(ring) {
                return Err(Error::RingMismatch(format!("{} vs {}", c.ring(), ring)));
            }
        }
        Ok(VectorField {
            ring: ring.clone(),
            coeffs,
        })
    }

    pub fn zero(ring: &Arc<Ring>) -> VectorField {
        VectorField {
            ring: ring.clone(),
            coeffs: vec![Poly::zero(ring); ring.nvars()],
        }
    }

    /// The coordinate field `d/dx_i`.
    pub fn partial(ring: &Arc<Ring>, i: usize) -> VectorField {
        let mut v = VectorField::zero(ring);
        v.coeffs[i] = Poly::one(ring);
        v
    }

    /// `sum w_i x_i d/dx_i` for the ring weights.
    pub fn euler(ring: &Arc<Ring>) -> VectorField {
        let coeffs = (0..ring.nvars())
            .map(|i| Poly::var(ring, i).scale(&crate::poly::q(ring.weights()[i])))
            .collect();
        VectorField {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Poly> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The derivation applied to `f`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(f.ring());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let d = f.derivative(i);
            if !d.is_zero() {
                acc = &acc + &(a * &d);
            }
        }
        acc
    }

    /// Lie bracket `[self, other]`.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        let coeffs = (0..self.ring.nvars())
            .map(|i| &self.apply(&other.coeffs[i]) - &other.apply(&self.coeffs[i]))
            .collect();
        VectorField {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, c: &Q) -> VectorField {
        VectorField {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> VectorField {
        VectorField {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| a * p).collect(),
        }
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    /// True if the field does not vanish at the origin.
    pub fn has_constant_term(&self) -> bool {
        self.coeffs.iter().any(|c| !c.constant_coeff().is_zero())
    }

    /// Moves to a ring with the same variables (different order or weights).
    pub fn to_ring(&self, ring: &Arc<Ring>) -> Result<VectorField> {
        Ok(VectorField {
            ring: ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c.to_ring(ring)).collect::<Result<_>>()?,
        })
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Fields given as columns of a presentation.
pub fn fields_of(m: &ModulePresentation) -> Vec<VectorField> {
    m.gens
        .iter()
        .map(|c| VectorField {
            ring: m.ring.clone(),
            coeffs: c.clone(),
        })
        .collect()
}

/// Positive integer weights making every polynomial weighted homogeneous.
/// The ring weights are preferred when they work.
pub fn infer_weights(polys: &[Poly]) -> Option<Vec<i64>> {
    let ring = polys.first()?.ring().clone();
    if polys.iter().all(|p| p.is_homogeneous()) {
        return Some(ring.weights().to_vec());
    }
    let n = ring.nvars();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for p in polys {
        let Some((e0, _)) = p.terms().first() else { continue };
        for (e, _) in &p.terms()[1..] {
            rows.push((0..n).map(|i| crate::poly::q(e[i] as i64 - e0[i] as i64)).collect());
        }
    }
    let used: Vec<bool> = (0..n)
        .map(|i| polys.iter().any(|p| p.terms().iter().any(|(e, _)| e[i] > 0)))
        .collect();
    weights_from_constraints(&rows, &used)
}

/// Positive integer weights `w` with `row . w = 0` for every row; variables
/// not marked as used get weight one.
pub(crate) fn weights_from_constraints(rows: &[Vec<Q>], used: &[bool]) -> Option<Vec<i64>> {
    let idx: Vec<usize> = (0..used.len()).filter(|&i| used[i]).collect();
    let sub: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| idx.iter().map(|&i| r[i].clone()).collect())
        .collect();
    let k = idx.len();
    let basis = linalg::nullspace(&sub, k);
    let candidate = positive_combination(&basis, k)?;
    let mut w = vec![1i64; used.len()];
    for (j, &i) in idx.iter().enumerate() {
        w[i] = candidate[j];
    }
    Some(w)
}

fn positive_combination(basis: &[Vec<Q>], k: usize) -> Option<Vec<i64>> {
    if k == 0 {
        return Some(Vec::new());
    }
    if basis.is_empty() {
        return None;
    }
    let b = basis.len();
    if b > 5 {
        let sum: Vec<Q> = (0..k).map(|i| basis.iter().map(|v| v[i].clone()).sum()).collect();
        return to_positive_ints(&sum);
    }
    let range: Vec<i64> = vec![1, -1, 2, -2, 3, -3, 0, 4, -4, 5, -5];
    let mut best: Option<Vec<i64>> = None;
    let total = range.len().pow(b as u32);
    for idx in 0..total {
        let mut x = idx;
        let mut coef = Vec::with_capacity(b);
        for _ in 0..b {
            coef.push(range[x % range.len()]);
            x /= range.len();
        }
        let v: Vec<Q> = (0..k)
            .map(|i| {
                basis
                    .iter()
                    .zip(&coef)
                    .map(|(bv, &c)| &bv[i] * crate::poly::q(c))
                    .sum()
            })
            .collect();
        if let Some(w) = to_positive_ints(&v) {
            let better = match &best {
                None => true,
                Some(bw) => w.iter().sum::<i64>() < bw.iter().sum::<i64>(),
            };
            if better {
                best = Some(w);
            }
        }
    }
    best
}

fn to_positive_ints(v: &[Q]) -> Option<Vec<i64>> {
    use num_integer::Integer;
    if !v.iter().all(|x| x.is_positive()) {
        return None;
    }
    let mut den = num_bigint::BigInt::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let mut g = num_bigint::BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    ints.iter()
        .map(|x| i64::try_from(x / &g).ok())
        .collect()
}

/// Syzygy-based computation of `{ eta : eta(f) in (f) }`.
///
/// When `f` is weighted homogeneous (for the ring weights or inferred ones) the
/// result is a graded minimal generating set; otherwise redundant generators
/// are removed greedily.
pub fn derlog_hypersurface(f: &Poly) -> Result<ModulePresentation> {
    if f.is_zero() {
        return Err(Error::Invalid("the zero polynomial defines no hypersurface".into()));
    }
    let ring = f.ring().clone();
    let n = ring.nvars();
    match infer_weights(std::slice::from_ref(f)) {
        Some(w) => {
            let wr = ring.reweighted(&w)?;
            let g = f.to_ring(&wr)?;
            let mut cols: Vec<Vector> = g.gradient().into_iter().map(|d| vec![d]).collect();
            cols.push(vec![g.clone()]);
            let syz = syzygies(&wr, 1, &cols, Some(&[0]))?;
            let fields: Vec<Vector> = project(syz, n);
            let rd: Vec<i64> = w.iter().map(|x| -x).collect();
            let mins = minimal_generators(&wr, n, &fields, Some(&rd))?;
            let back = to_ring_all(&mins, &ring)?;
            let graded = w.as_slice() == ring.weights();
            Ok(ModulePresentation {
                ring: ring.clone(),
                rank: n,
                gens: back,
                row_degrees: if graded { Some(rd) } else { None },
            })
        }
        None => {
            let mut cols: Vec<Vector> = f.gradient().into_iter().map(|d| vec![d]).collect();
            cols.push(vec![f.clone()]);
            let syz = syzygies(&ring, 1, &cols, None)?;
            let fields = project(syz, n);
            let mins = minimal_generators(&ring, n, &fields, None)?;
            Ok(ModulePresentation::new(&ring, n, mins))
        }
    }
}

fn project(vs: Vec<Vector>, n: usize) -> Vec<Vector> {
    vs.into_iter()
        .map(|mut v| {
            v.truncate(n);
            v
        })
        .filter(|v| !is_zero_vector(v))
        .collect()
}

fn to_ring_all(vs: &[Vector], ring: &Arc<Ring>) -> Result<Vec<Vector>> {
    vs.iter()
        .map(|v| v.iter().map(|p| p.to_ring(ring)).collect::<Result<Vector>>())
        .collect()
}

/// `{ eta : eta(I) contained in I }` for the ideal generated by `gens`.
pub fn derlog_ideal(ring: &Arc<Ring>, gens: &[Poly]) -> Result<ModulePresentation> {
    let gens: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let n = ring.nvars();
    if gens.is_empty() {
        // every field preserves the zero ideal
        let all: Vec<Vector> = (0..n).map(|i| VectorField::partial(ring, i).coeffs).collect();
        return Ok(ModulePresentation::new(ring, n, all));
    }
    for g in &gens {
        g.ensure_same(&Poly::zero(ring))?;
    }
    let k = gens.len();
    let weights = infer_weights(&gens);
    let wr = match &weights {
        Some(w) => ring.reweighted(w)?,
        None => ring.clone(),
    };
    let gens_w: Vec<Poly> = gens.iter().map(|g| g.to_ring(&wr)).collect::<Result<_>>()?;
    let a_cols: Vec<Vector> = (0..n)
        .map(|i| gens_w.iter().map(|g| g.derivative(i)).collect())
        .collect();
    let mut b_cols: Vec<Vector> = Vec::new();
    for j in 0..k {
        for g in &gens_w {
            let mut c = vec![Poly::zero(&wr); k];
            c[j] = g.clone();
            b_cols.push(c);
        }
    }
    let shifts: Option<Vec<i64>> = weights
        .as_ref()
        .map(|_| gens_w.iter().map(|g| -g.homogeneous_degree().unwrap_or(0)).collect());
    let ker = kernel_of_map(&wr, k, &a_cols, &b_cols, shifts.as_deref())?;
    let rd: Option<Vec<i64>> = weights.as_ref().map(|w| w.iter().map(|x| -x).collect());
    let mins = minimal_generators(&wr, n, &ker, rd.as_deref())?;
    let back = to_ring_all(&mins, ring)?;
    let graded = weights.as_deref() == Some(ring.weights());
    Ok(ModulePresentation {
        ring: ring.clone(),
        rank: n,
        gens: back,
        row_degrees: if graded { rd } else { None },
    })
}

/// Reduced Gröbner basis of the ideal generated by `f` and its partial derivatives.
pub fn singular_locus_ideal(f: &Poly) -> Result<Vec<Poly>> {
    let mut gens = f.gradient();
    gens.push(f.clone());
    gens.retain(|g| !g.is_zero());
    let b = ideal_basis(f.ring(), &gens)?;
    Ok(b.into_iter().map(|p| p.normalized()).collect())
}

/// Where a basis field of a certificate came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Annihilates the components of the map.
    Vertical,
    /// Lift of a logarithmic field downstairs.
    Lifted,
    /// Computed directly on the hypersurface.
    Direct,
}

/// A basis of logarithmic fields whose determinant is a unit times the reduced equation.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeDivisorCertificate {
    pub ring: Arc<Ring>,
    /// Reduced defining equation.
    pub equation: Poly,
    pub basis: Vec<VectorField>,
    /// `det(basis) = unit * equation`.
    pub unit: Q,
    pub provenance: Vec<Provenance>,
    /// False when the input was not weighted homogeneous and the basis is only global.
    pub germ_certified: bool,
    pub notices: Vec<String>,
}

impl FreeDivisorCertificate {
    /// Determinant of the basis matrix (columns are fields).
    pub fn determinant(&self) -> Poly {
        let cols: Vec<Vector> = self.basis.iter().map(|v| v.coeffs.clone()).collect();
        det_cols(&cols)
    }

    /// Re-checks the criterion: each field is logarithmic, the determinant is a
    /// nonzero multiple of the equation, and the equation is reduced.
    pub fn verify(&self) -> Result<bool> {
        let n = self.ring.nvars();
        if self.basis.len() != n || self.provenance.len() != n || self.equation.is_zero() {
            return Ok(false);
        }
        for v in &self.basis {
            if !self.equation.divides(&v.apply(&self.equation)) {
                return Ok(false);
            }
        }
        match self.determinant().unit_multiple_of(&self.equation) {
            Some(c) if c == self.unit => {}
            _ => return Ok(false),
        }
        let red = squarefree_part(&self.equation)?;
        Ok(red.unit_multiple_of(&self.equation).is_some())
    }
}

/// Why a hypersurface failed the determinant criterion.
#[derive(Clone, Debug, PartialEq)]
pub struct NotFreeEvidence {
    pub equation: Poly,
    /// Size of the minimal generating set found.
    pub generator_count: usize,
    pub expected: usize,
    /// Whether some `n` of the generators had determinant a unit multiple of the equation.
    pub determinant_test_passed: bool,
    pub generators: ModulePresentation,
    pub germ_certified: bool,
    pub notices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Freeness {
    Free(FreeDivisorCertificate),
    NotFree(NotFreeEvidence),
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free(_))
    }

    pub fn certificate(&self) -> Option<&FreeDivisorCertificate> {
        match self {
            Freeness::Free(c) => Some(c),
            Freeness::NotFree(_) => None,
        }
    }
}

/// Reduced equation, with a notice if it differs from the input.
pub(crate) fn reduced_equation(f: &Poly, notices: &mut Vec<String>) -> Result<Poly> {
    let g = squarefree_part(f)?;
    if g.unit_multiple_of(f).is_none() {
        notices.push(format!(
            "input is not reduced; using its squarefree part {g}"
        ));
    }
    Ok(g)
}

/// Saito's criterion: free iff `Der(-log f)` has `n` generators whose
/// determinant is a unit times the reduced equation.
///
/// Inputs that are not weighted homogeneous for any positive weights are
/// refused unless `allow_nonhomogeneous` is set; the verdict is then global.
pub fn is_free_saito(f: &Poly, allow_nonhomogeneous: bool) -> Result<Freeness> {
    if f.is_zero() {
        return Err(Error::Invalid("the zero polynomial defines no hypersurface".into()));
    }
    let ring = f.ring().clone();
    let n = ring.nvars();
    let mut notices = Vec::new();
    let g = reduced_equation(f, &mut notices)?;
    let homogeneous = infer_weights(std::slice::from_ref(&g)).is_some();
    if !homogeneous {
        if !allow_nonhomogeneous {
            return Err(Error::NotHomogeneous(format!(
                "{g} is not weighted homogeneous for positive weights"
            )));
        }
        notices.push("global, not germ-certified".into());
    }
    let m = derlog_hypersurface(&g)?;
    let cols = if homogeneous {
        m.gens.clone()
    } else {
        drop_redundant(&ring, n, m.gens.clone())?
    };
    let mut found: Option<(Vec<Vector>, Q)> = None;
    if cols.len() == n {
        if let Some(c) = det_cols(&cols).unit_multiple_of(&g) {
            found = Some((cols.clone(), c));
        }
    } else if !homogeneous && cols.len() > n && binomial(cols.len(), n) <= 500 {
        for s in subsets(cols.len(), n) {
            let pick: Vec<Vector> = s.iter().map(|&i| cols[i].clone()).collect();
            if let Some(c) = det_cols(&pick).unit_multiple_of(&g) {
                found = Some((pick, c));
                break;
            }
        }
    }
    match found {
        Some((basis, unit)) => Ok(Freeness::Free(FreeDivisorCertificate {
            ring: ring.clone(),
            equation: g,
            basis: basis
                .into_iter()
                .map(|c| VectorField {
                    ring: ring.clone(),
                    coeffs: c,
                })
                .collect(),
            unit,
            provenance: vec![Provenance::Direct; n],
            germ_certified: homogeneous,
            notices,
        })),
        None => Ok(Freeness::NotFree(NotFreeEvidence {
            equation: g,
            generator_count: cols.len(),
            expected: n,
            determinant_test_passed: false,
            generators: m,
            germ_certified: homogeneous,
            notices,
        })),
    }
}

/// Removes generators made redundant by a syzygy. Entries of each syzygy are
/// reduced against one another, with the matching column operations on the
/// generators, until one becomes a nonzero constant. Needed when no grading
/// makes generating sets minimal.
fn drop_redundant(ring: &Arc<Ring>, rank: usize, mut gens: Vec<Vector>) -> Result<Vec<Vector>> {
    gens.retain(|v| !is_zero_vector(v));
    'outer: loop {
        let syz = syzygies(ring, rank, &gens, None)?;
        for s in syz {
            let mut a = s;
            let mut g = gens.clone();
            for _ in 0..64 {
                if let Some(i) = a.iter().position(|c| c.is_unit()) {
                    g.remove(i);
                    gens = g;
                    continue 'outer;
                }
                // a_i -= q a_j together with g_j += q g_i keeps sum a_k g_k = 0
                let mut step = None;
                'find: for i in 0..a.len() {
                    for j in 0..a.len() {
                        if i == j || a[j].is_zero() || a[i].is_zero() {
                            continue;
                        }
                        let (q, r) = a[i].div_rem(&a[j]);
                        if !q.is_zero() {
                            step = Some((i, j, q, r));
                            break 'find;
                        }
                    }
                }
                let Some((i, j, q, r)) = step else { break };
                a[i] = r;
                let add: Vector = g[i].iter().map(|c| &q * c).collect();
                for (x, y) in g[j].iter_mut().zip(add) {
                    *x = &*x + &y;
                }
            }
        }
        return Ok(gens);
    }
}

fn binomial(n: usize, k: usize) -> usize {
    let mut r: usize = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Aleksandrov's criterion: the singular locus has codimension at least two
/// and its coordinate ring has projective dimension at most two. Smooth
/// hypersurfaces count as free.
pub fn is_free_aleksandrov(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::Invalid("the zero polynomial defines no hypersurface".into()));
    }
    let mut notices = Vec::new();
    let g = reduced_equation(f, &mut notices)?;
    let w = infer_weights(std::slice::from_ref(&g)).ok_or_else(|| {
        Error::NotHomogeneous(format!("{g} is not weighted homogeneous for positive weights"))
    })?;
    let wr = g.ring().reweighted(&w)?;
    let gw = g.to_ring(&wr)?;
    let sing = singular_locus_ideal(&gw)?;
    let n = wr.nvars();
    let codim = Codim::from_dim(n, krull_dim(&wr, &sing)?);
    if codim == Codim::Infinite {
        return Ok(true);
    }
    if !codim.at_least(2) {
        return Ok(false);
    }
    let cols: Vec<Vector> = sing.iter().map(|p| vec![p.clone()]).collect();
    let pres = ModulePresentation::graded(&wr, cols, vec![0])?;
    let res = minimal_resolution(&pres)?;
    Ok(res.pdim().map(|d| d <= 2).unwrap_or(true))
}

/// True if some field `eta` has `eta(f) = u f` with `u` a unit at the origin.
pub fn has_euler_like_field(f: &Poly) -> Result<bool> {
    if f.is_zero() || f.is_constant() {
        return Ok(true);
    }
    if infer_weights(std::slice::from_ref(f)).is_some() {
        return Ok(true);
    }
    let ring = f.ring().clone();
    let jac: Vec<Poly> = f.gradient().into_iter().filter(|p| !p.is_zero()).collect();
    if ideal_contains(&ring, &jac, f)? {
        return Ok(true);
    }
    // (J : f) = (J intersect (f)) / f, not contained in the maximal ideal
    let meet = intersect_ideals(&ring, &jac, std::slice::from_ref(f))?;
    for g in meet {
        let c = g
            .div_exact(f)
            .ok_or_else(|| Error::Invalid("intersection element not divisible".into()))?;
        if !c.constant_coeff().is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True if some logarithmic field does not vanish at the origin.
pub fn is_suspended(f: &Poly) -> Result<bool> {
    let m = derlog_hypersurface(f)?;
    Ok(fields_of(&m).iter().any(|v| v.has_constant_term()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::module_equal;
    use crate::poly::parse_poly;

    #[test]
    fn normal_crossings_fields() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let f = parse_poly("x*y", &r).unwrap();
        let m = derlog_hypersurface(&f).unwrap();
        let expect = vec![
            vec![parse_poly("x", &r).unwrap(), Poly::zero(&r)],
            vec![Poly::zero(&r), parse_poly("y", &r).unwrap()],
        ];
        assert_eq!(m.gens.len(), 2);
        assert!(module_equal(&r, 2, &m.gens, &expect).unwrap());
    }

    #[test]
    fn affine_line_arrangement_is_globally_free() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let f = parse_poly("x*y*(x + y + 1)", &r).unwrap();
        assert!(matches!(is_free_saito(&f, false), Err(Error::NotHomogeneous(_))));
        let res = is_free_saito(&f, true).unwrap();
        let c = res.certificate().expect("three affine lines are free");
        assert!(c.verify().unwrap());
        assert!(!c.germ_certified);
        let full = derlog_hypersurface(&f).unwrap();
        let basis: Vec<Vector> = c.basis.iter().map(|v| v.coeffs().to_vec()).collect();
        assert!(module_equal(&r, 2, &full.gens, &basis).unwrap());
    }

    #[test]
    fn cusp_is_free_with_weighted_euler() {
        let r = Ring::with_weights(&["x", "y"], &[3, 2]).unwrap();
        let f = parse_poly("x^2 - y^3", &r).unwrap();
        let res = is_free_saito(&f, false).unwrap();
        let cert = res.certificate().unwrap();
        assert!(cert.verify().unwrap());
        assert!(is_free_aleksandrov(&f).unwrap());
    }

    #[test]
    fn weights_are_inferred() {
        let r = Ring::new(&["x", "y", "z"]).unwrap();
        let f = parse_poly("x^2 - y^2*z", &r).unwrap();
        let w = infer_weights(&[f.clone()]).unwrap();
        assert!(f.homogeneous_degree_for(&w).flatten().is_some());
        assert!(w.iter().all(|&x| x > 0));
        let g = parse_poly("x + x^2", &r).unwrap();
        assert!(infer_weights(&[g]).is_none());
    }

    #[test]
    fn singular_locus_of_crossing() {
        let r = Ring::new(&["s1", "s2"]).unwrap();
        let f = parse_poly("s1*s2", &r).unwrap();
        let i = singular_locus_ideal(&f).unwrap();
        assert_eq!(i, vec![parse_poly("s2", &r).unwrap(), parse_poly("s1", &r).unwrap()]);
    }
}
