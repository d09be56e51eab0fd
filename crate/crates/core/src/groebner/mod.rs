//! Gröbner bases of submodules of free modules, syzygies, elimination,
//! dimension and minimal free resolutions.

mod dim;
mod engine;
mod limits;
mod presentation;
mod resolution;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{wdeg, Exps, MonomialOrder, Poly, Ring, Q};

pub use dim::{hilbert_numerator, krull_dim, krull_dim_hilbert, krull_dim_module, Codim};
pub use engine::{ModOrder, PosKind};
pub(crate) use engine::{Elem, Engine, Term};
pub use limits::{engine_stats, reset_engine_stats, steps_used, with_limits, EngineStats, Limits, DEFAULT_STEP_BUDGET};
pub use presentation::ModulePresentation;
pub use resolution::{minimal_generators, minimal_resolution, prune_presentation, Resolution};

/// Element of a free module: one polynomial per component.
pub type Vector = Vec<Poly>;

pub fn zero_vector(ring: &Arc<Ring>, rank: usize) -> Vector {
    vec![Poly::zero(ring); rank]
}

pub fn is_zero_vector(v: &[Poly]) -> bool {
    v.iter().all(|p| p.is_zero())
}

/// Clears denominators: returns `D * v` as an element and `D`.
pub(crate) fn to_elem(v: &[Poly], order: &ModOrder, offset: usize) -> (Elem, BigInt) {
    let mut den = BigInt::one();
    for p in v {
        for (_, c) in p.terms() {
            den = den.lcm(c.denom());
        }
    }
    let mut terms = Vec::new();
    for (i, p) in v.iter().enumerate() {
        for (e, c) in p.terms() {
            let k = c.numer() * (&den / c.denom());
            terms.push(Term {
                e: e.clone(),
                c: i + offset,
                k,
            });
        }
    }
    (Elem::from_terms(terms, order), den)
}

pub(crate) fn from_elem(e: &Elem, ring: &Arc<Ring>, rank: usize, offset: usize) -> Vector {
    let mut comps: Vec<Vec<(Exps, Q)>> = vec![Vec::new(); rank];
    for t in &e.t {
        if t.c >= offset && t.c < offset + rank {
            comps[t.c - offset].push((t.e.clone(), Q::from_integer(t.k.clone())));
        }
    }
    comps.into_iter().map(|ts| Poly::from_terms(ring, ts)).collect()
}

/// Degree of a homogeneous vector under the given component shifts.
/// `Some(None)` for the zero vector, `None` if not homogeneous.
pub fn vector_degree(v: &[Poly], weights: &[i64], shifts: &[i64]) -> Option<Option<i64>> {
    let mut d: Option<i64> = None;
    for (i, p) in v.iter().enumerate() {
        for (e, _) in p.terms() {
            let x = wdeg(weights, e) + shifts[i];
            match d {
                None => d = Some(x),
                Some(y) if y != x => return None,
                _ => {}
            }
        }
    }
    Some(d)
}

fn check_vectors(ring: &Arc<Ring>, rank: usize, gens: &[Vector]) -> Result<()> {
    for g in gens {
        if g.len() != rank {
            return Err(Error::Invalid(format!(
                "vector of length {} in a module of rank {rank}",
                g.len()
            )));
        }
        for p in g {
            if !p.ring().same_vars(ring) {
                return Err(Error::RingMismatch(format!("{} vs {}", p.ring(), ring)));
            }
        }
    }
    Ok(())
}

/// Term order for a free module over `ring`. With `shifts` the order is
/// degree-compatible for that grading.
pub fn module_order(ring: &Ring, rank: usize, shifts: Option<&[i64]>, pos: PosKind) -> ModOrder {
    ModOrder {
        mono: ring.order().clone(),
        weights: ring.weights().to_vec(),
        graded: shifts.is_some(),
        shifts: shifts.map(|s| s.to_vec()).unwrap_or_else(|| vec![0; rank]),
        pos,
    }
}

/// A reduced Gröbner basis of a submodule of `ring^rank`.
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    rank: usize,
    engine: Engine,
}

impl GroebnerBasis {
    pub fn compute(ring: &Arc<Ring>, rank: usize, gens: &[Vector], order: ModOrder) -> Result<GroebnerBasis> {
        check_vectors(ring, rank, gens)?;
        let mut eng = Engine::new(order.clone(), rank);
        let elems: Vec<Elem> = gens.iter().map(|g| to_elem(g, &order, 0).0).collect();
        eng.add_generators(elems)?;
        let basis = eng.reduced_basis()?;
        Ok(GroebnerBasis {
            ring: ring.clone(),
            rank,
            engine: Engine::from_basis(order, rank, basis),
        })
    }

    /// Basis in the default term-over-position order for the ring.
    pub fn new(ring: &Arc<Ring>, rank: usize, gens: &[Vector]) -> Result<GroebnerBasis> {
        GroebnerBasis::compute(ring, rank, gens, module_order(ring, rank, None, PosKind::Top))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> &ModOrder {
        &self.engine.order
    }

    pub fn len(&self) -> usize {
        self.engine.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.engine.elems.is_empty()
    }

    pub(crate) fn elems(&self) -> &[Elem] {
        &self.engine.elems
    }

    /// The basis as vectors, primitive integer coefficients, increasing leading terms.
    pub fn elements(&self) -> Vec<Vector> {
        self.engine
            .elems
            .iter()
            .map(|e| from_elem(e, &self.ring, self.rank, 0))
            .collect()
    }

    /// Leading monomial and component of each element.
    pub fn leading_terms(&self) -> Vec<(Exps, usize)> {
        self.engine.elems.iter().map(|e| (e.t[0].e.clone(), e.t[0].c)).collect()
    }

    /// True if the submodule is the whole free module.
    pub fn is_everything(&self) -> bool {
        let mut seen = vec![false; self.rank];
        for e in &self.engine.elems {
            if e.t[0].e.iter().all(|&x| x == 0) {
                seen[e.t[0].c] = true;
            }
        }
        seen.iter().all(|&b| b)
    }

    pub fn normal_form(&mut self, v: &[Poly]) -> Result<Vector> {
        check_vectors(&self.ring, self.rank, std::slice::from_ref(&v.to_vec()))?;
        let (e, den) = to_elem(v, &self.engine.order, 0);
        let (r, s) = self.engine.reduce(e, true)?;
        let factor = (s * BigRational::from_integer(den)).recip();
        Ok(from_elem(&r, &self.ring, self.rank, 0)
            .into_iter()
            .map(|p| p.scale(&factor))
            .collect())
    }

    pub fn contains(&mut self, v: &[Poly]) -> Result<bool> {
        Ok(is_zero_vector(&self.normal_form(v)?))
    }

    /// Re-checks that every S-pair reduces to zero.
    pub fn verify(&mut self) -> Result<bool> {
        self.engine.check_closed()
    }
}

/// Reduced Gröbner basis of an ideal, as polynomials.
pub fn ideal_basis(ring: &Arc<Ring>, gens: &[Poly]) -> Result<Vec<Poly>> {
    let vs: Vec<Vector> = gens.iter().map(|g| vec![g.clone()]).collect();
    let gb = GroebnerBasis::new(ring, 1, &vs)?;
    Ok(gb.elements().into_iter().map(|mut v| v.remove(0)).collect())
}

pub fn ideal_contains(ring: &Arc<Ring>, gens: &[Poly], f: &Poly) -> Result<bool> {
    let vs: Vec<Vector> = gens.iter().map(|g| vec![g.clone()]).collect();
    let mut gb = GroebnerBasis::new(ring, 1, &vs)?;
    gb.contains(&[f.clone()])
}

fn column_shifts(cols: &[Vector], weights: &[i64], shifts: &[i64]) -> Option<Vec<i64>> {
    cols.iter()
        .map(|c| vector_degree(c, weights, shifts).map(|d| d.unwrap_or(0)))
        .collect()
}

/// Gröbner basis of the module of pairs `(M a, a)`, in which the first block dominates.
struct Augmented {
    gb: GroebnerBasis,
    rank: usize,
    ncols: usize,
}

impl Augmented {
    fn new(ring: &Arc<Ring>, rank: usize, cols: &[Vector], shifts: Option<&[i64]>) -> Result<Augmented> {
        check_vectors(ring, rank, cols)?;
        let k = cols.len();
        let graded = shifts.and_then(|s| column_shifts(cols, ring.weights(), s).map(|cs| (s.to_vec(), cs)));
        let all_shifts = graded.map(|(mut s, cs)| {
            s.extend(cs);
            s
        });
        let order = module_order(ring, rank + k, all_shifts.as_deref(), PosKind::Split(rank));
        let mut elems = Vec::with_capacity(k);
        for (j, c) in cols.iter().enumerate() {
            let (mut e, den) = to_elem(c, &order, 0);
            e.t.push(Term {
                e: ring.zero_exps(),
                c: rank + j,
                k: den,
            });
            elems.push(Elem::from_terms(e.t, &order));
        }
        let mut eng = Engine::new(order.clone(), rank + k);
        eng.add_generators(elems)?;
        let basis = eng.reduced_basis()?;
        Ok(Augmented {
            gb: GroebnerBasis {
                ring: ring.clone(),
                rank: rank + k,
                engine: Engine::from_basis(order, rank + k, basis),
            },
            rank,
            ncols: k,
        })
    }

    fn syzygies(&self) -> Vec<Vector> {
        self.gb
            .engine
            .elems
            .iter()
            .filter(|e| e.t[0].c >= self.rank)
            .map(|e| from_elem(e, &self.gb.ring, self.ncols, self.rank))
            .collect()
    }

    fn solve(&mut self, v: &[Poly]) -> Result<Option<Vector>> {
        let mut padded = v.to_vec();
        padded.extend(zero_vector(&self.gb.ring, self.ncols));
        let (e, den) = to_elem(&padded, &self.gb.engine.order, 0);
        let (r, s) = self.gb.engine.reduce(e, true)?;
        if r.t.iter().any(|t| t.c < self.rank) {
            return Ok(None);
        }
        let factor = -(s * BigRational::from_integer(den)).recip();
        Ok(Some(
            from_elem(&r, &self.gb.ring, self.ncols, self.rank)
                .into_iter()
                .map(|p| p.scale(&factor))
                .collect(),
        ))
    }
}

/// Generators of the module of relations among the columns `cols` of a matrix
/// with `rank` rows. With `shifts` (row degrees) the computation is graded.
pub fn syzygies(ring: &Arc<Ring>, rank: usize, cols: &[Vector], shifts: Option<&[i64]>) -> Result<Vec<Vector>> {
    let aug = Augmented::new(ring, rank, cols, shifts)?;
    Ok(aug.syzygies())
}

/// Solves `sum a_j cols_j = v` for polynomial coefficients, reusing one basis for many targets.
pub struct LinearSolver {
    aug: Augmented,
}

impl LinearSolver {
    pub fn new(ring: &Arc<Ring>, rank: usize, cols: &[Vector], shifts: Option<&[i64]>) -> Result<LinearSolver> {
        Ok(LinearSolver {
            aug: Augmented::new(ring, rank, cols, shifts)?,
        })
    }

    /// Coefficients `a` with `sum a_j cols_j = v`, or `None` if `v` is not in the span.
    pub fn solve(&mut self, v: &[Poly]) -> Result<Option<Vector>> {
        if v.len() != self.aug.rank {
            return Err(Error::Invalid("target has the wrong length".into()));
        }
        self.aug.solve(v)
    }

    /// Generators of the relations among the columns.
    pub fn syzygies(&self) -> Vec<Vector> {
        self.aug.syzygies()
    }
}

/// `{ v : A v lies in the column span of B }` for matrices given by columns.
pub fn kernel_of_map(
    ring: &Arc<Ring>,
    rank: usize,
    a_cols: &[Vector],
    b_cols: &[Vector],
    shifts: Option<&[i64]>,
) -> Result<Vec<Vector>> {
    let n = a_cols.len();
    let mut cols = a_cols.to_vec();
    cols.extend(b_cols.iter().cloned());
    let syz = syzygies(ring, rank, &cols, shifts)?;
    Ok(syz
        .into_iter()
        .map(|mut v| {
            v.truncate(n);
            v
        })
        .filter(|v| !is_zero_vector(v))
        .collect())
}

/// Intersects the submodule generated by `gens` with the span of the free
/// module over the variables not in `elim` (given as a mask).
pub fn eliminate(ring: &Arc<Ring>, rank: usize, gens: &[Vector], elim: &[bool]) -> Result<Vec<Vector>> {
    if elim.len() != ring.nvars() {
        return Err(Error::Invalid("elimination mask has the wrong length".into()));
    }
    // move eliminated variables to the front under a block order
    let n = ring.nvars();
    let mut perm: Vec<usize> = (0..n).filter(|&i| elim[i]).collect();
    let k = perm.len();
    perm.extend((0..n).filter(|&i| !elim[i]));
    let names: Vec<String> = perm.iter().map(|&i| ring.vars()[i].clone()).collect();
    let weights: Vec<i64> = perm.iter().map(|&i| ring.weights()[i]).collect();
    let blocks = if k == 0 || k == n { vec![n] } else { vec![k, n - k] };
    let bring = Ring::with_order(&names, &weights, MonomialOrder::Block(blocks))?;
    let mut inv = vec![0; n];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let moved: Vec<Vector> = gens
        .iter()
        .map(|v| v.iter().map(|p| p.embed(&bring, &inv)).collect())
        .collect();
    let order = module_order(&bring, rank, None, PosKind::Top);
    let gb = GroebnerBasis::compute(&bring, rank, &moved, order)?;
    let back: Vec<usize> = perm.clone();
    let mut out = Vec::new();
    for v in gb.elements() {
        let free = v.iter().all(|p| p.terms().iter().all(|(e, _)| e[..k].iter().all(|&x| x == 0)));
        if free {
            out.push(v.iter().map(|p| p.embed(ring, &back)).collect());
        }
    }
    Ok(out)
}

/// Intersection of two ideals.
pub fn intersect_ideals(ring: &Arc<Ring>, a: &[Poly], b: &[Poly]) -> Result<Vec<Poly>> {
    // t*a + (1-t)*b in a ring with an extra variable t
    let mut names: Vec<String> = vec![fresh_name(ring, "t")];
    names.extend(ring.vars().iter().cloned());
    let mut weights = vec![1];
    weights.extend(ring.weights().iter().copied());
    let big = Ring::with_weights(&names, &weights)?;
    let map: Vec<usize> = (1..=ring.nvars()).collect();
    let t = Poly::var(&big, 0);
    let one_minus_t = &Poly::one(&big) - &t;
    let mut gens: Vec<Vector> = Vec::new();
    for f in a {
        gens.push(vec![&t * &f.embed(&big, &map)]);
    }
    for g in b {
        gens.push(vec![&one_minus_t * &g.embed(&big, &map)]);
    }
    let mut mask = vec![false; big.nvars()];
    mask[0] = true;
    let el = eliminate(&big, 1, &gens, &mask)?;
    let small = ring.clone();
    Ok(el
        .into_iter()
        .map(|v| {
            let p = &v[0];
            let terms = p.terms().iter().map(|(e, c)| {
                let mut e2 = small.zero_exps();
                for i in 0..small.nvars() {
                    e2[i] = e[i + 1];
                }
                (e2, c.clone())
            });
            Poly::from_terms(&small, terms)
        })
        .collect())
}

/// A variable name not used by `ring`, based on `base`.
pub fn fresh_name(ring: &Ring, base: &str) -> String {
    let mut name = format!("{base}_");
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// True if the two families generate the same submodule.
pub fn module_equal(ring: &Arc<Ring>, rank: usize, a: &[Vector], b: &[Vector]) -> Result<bool> {
    let mut ga = GroebnerBasis::new(ring, rank, a)?;
    let mut gb = GroebnerBasis::new(ring, rank, b)?;
    for v in a {
        if !gb.contains(v)? {
            return Ok(false);
        }
    }
    for v in b {
        if !ga.contains(v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True if every vector of `a` lies in the span of `b`.
pub fn module_contains_all(ring: &Arc<Ring>, rank: usize, b: &[Vector], a: &[Vector]) -> Result<bool> {
    let mut gb = GroebnerBasis::new(ring, rank, b)?;
    for v in a {
        if !gb.contains(v)? {
            return Ok(false);
        }
    }
    Ok(true)
}
