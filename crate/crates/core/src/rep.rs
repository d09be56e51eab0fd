//! Linear representations as families of linear vector fields, invariants by
//! degree, quotient maps and the identities tying them to liftable fields.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::{syzygies, Vector};
use crate::lift::PolyMap;
use crate::linalg;
use crate::logvf::VectorField;
use crate::poly::{q, Exps, Poly, Ring, Q};

/// Variable names `{p}{i}{j}` (1-based), with an underscore once an index exceeds 9.
pub fn matrix_vars(prefix: &str, rows: usize, cols: usize) -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=rows {
        for j in 1..=cols {
            out.push(entry_name(prefix, i, j, rows.max(cols)));
        }
    }
    out
}

fn entry_name(prefix: &str, i: usize, j: usize, size: usize) -> String {
    if size < 10 {
        format!("{prefix}{i}{j}")
    } else {
        format!("{prefix}{i}_{j}")
    }
}

/// Coordinates `x_ij`, `i <= j`, on symmetric matrices.
pub fn sym_vars(prefix: &str, m: usize) -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i..=m {
            out.push(entry_name(prefix, i, j, m));
        }
    }
    out
}

/// Coordinates `x_ij`, `i < j`, on skew-symmetric matrices.
pub fn skew_vars(prefix: &str, m: usize) -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            out.push(entry_name(prefix, i, j, m));
        }
    }
    out
}

/// The generic `rows x cols` matrix over a ring whose variables are the entries, row by row.
pub fn generic_matrix(ring: &Arc<Ring>, rows: usize, cols: usize) -> Vec<Vec<Poly>> {
    (0..rows)
        .map(|i| (0..cols).map(|j| Poly::var(ring, i * cols + j)).collect())
        .collect()
}

/// The generic symmetric matrix on `sym_vars` coordinates.
pub fn generic_symmetric(ring: &Arc<Ring>, m: usize) -> Vec<Vec<Poly>> {
    let idx = sym_index(m);
    (0..m)
        .map(|i| (0..m).map(|j| Poly::var(ring, idx[&(i.min(j), i.max(j))])).collect())
        .collect()
}

/// The generic skew-symmetric matrix on `skew_vars` coordinates.
pub fn generic_skew(ring: &Arc<Ring>, m: usize) -> Vec<Vec<Poly>> {
    let idx = skew_index(m);
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => Poly::zero(ring),
                    std::cmp::Ordering::Less => Poly::var(ring, idx[&(i, j)]),
                    std::cmp::Ordering::Greater => -&Poly::var(ring, idx[&(j, i)]),
                })
                .collect()
        })
        .collect()
}

fn sym_index(m: usize) -> HashMap<(usize, usize), usize> {
    let mut h = HashMap::new();
    for i in 0..m {
        for j in i..m {
            let k = h.len();
            h.insert((i, j), k);
        }
    }
    h
}

fn skew_index(m: usize) -> HashMap<(usize, usize), usize> {
    let mut h = HashMap::new();
    for i in 0..m {
        for j in i + 1..m {
            let k = h.len();
            h.insert((i, j), k);
        }
    }
    h
}

/// Pfaffian of a skew-symmetric matrix, by expansion along the first row.
pub fn pfaffian(a: &[Vec<Poly>]) -> Poly {
    let n = a.len();
    let ring = a[0][0].ring().clone();
    if n == 0 {
        return Poly::one(&ring);
    }
    if n % 2 == 1 {
        return Poly::zero(&ring);
    }
    if n == 2 {
        return a[0][1].clone();
    }
    let mut total = Poly::zero(&ring);
    for j in 1..n {
        if a[0][j].is_zero() {
            continue;
        }
        let keep: Vec<usize> = (1..n).filter(|&k| k != j).collect();
        let sub: Vec<Vec<Poly>> = keep
            .iter()
            .map(|&r| keep.iter().map(|&c| a[r][c].clone()).collect())
            .collect();
        let term = &a[0][j] * &pfaffian(&sub);
        // sign (-1)^(j+1) in 1-based indexing of the column
        total = if j % 2 == 1 { &total + &term } else { &total - &term };
    }
    total
}

fn mat_mul(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let ring = a[0][0].ring().clone();
    let inner = b.len();
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = Poly::zero(&ring);
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s = &s + &(&row[k] * &b[k][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn transpose(a: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let r = a.len();
    let c = a[0].len();
    (0..c).map(|j| (0..r).map(|i| a[i][j].clone()).collect()).collect()
}

fn constant_matrix(ring: &Arc<Ring>, a: &[Vec<Q>]) -> Vec<Vec<Poly>> {
    a.iter()
        .map(|r| r.iter().map(|c| Poly::constant(ring, c.clone())).collect())
        .collect()
}

fn elementary(n: usize, i: usize, j: usize) -> Vec<Vec<Q>> {
    let mut a = vec![vec![Q::zero(); n]; n];
    a[i][j] = q(1);
    a
}

/// A Lie algebra acting through linear vector fields on `ring`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearRep {
    pub name: String,
    pub ring: Arc<Ring>,
    pub fields: Vec<VectorField>,
}

impl LinearRep {
    pub fn new(name: &str, ring: &Arc<Ring>, fields: Vec<VectorField>) -> Result<LinearRep> {
        for v in &fields {
            if !v.ring().same_vars(ring) {
                return Err(Error::RingMismatch("field over a different ring".into()));
            }
            let linear = v
                .coeffs()
                .iter()
                .all(|c| c.terms().iter().all(|(e, _)| e.iter().map(|&x| x as u32).sum::<u32>() == 1));
            if !linear {
                return Err(Error::Invalid(format!("{v} is not a linear vector field")));
            }
        }
        Ok(LinearRep {
            name: name.into(),
            ring: ring.clone(),
            fields,
        })
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// `M` with `field = sum_a (sum_c M[a][c] x_c) d/dx_a`.
    pub fn field_matrix(&self, k: usize) -> Vec<Vec<Q>> {
        linear_matrix(&self.fields[k])
    }

    /// Dimension of the span of the fields.
    pub fn algebra_dim(&self) -> usize {
        let n = self.nvars();
        let rows: Vec<Vec<Q>> = (0..self.fields.len())
            .map(|k| self.field_matrix(k).into_iter().flatten().collect())
            .collect();
        linalg::rank(&rows, n * n)
    }

    /// Every bracket of two fields lies in the linear span of the fields.
    pub fn bracket_closed(&self) -> bool {
        let n = self.nvars();
        let basis: Vec<Vec<Q>> = (0..self.fields.len())
            .map(|k| self.field_matrix(k).into_iter().flatten().collect())
            .collect();
        let r = linalg::rank(&basis, n * n);
        for a in 0..self.fields.len() {
            for b in a + 1..self.fields.len() {
                let br = self.fields[a].bracket(&self.fields[b]);
                let mut rows = basis.clone();
                rows.push(linear_matrix(&br).into_iter().flatten().collect());
                if linalg::rank(&rows, n * n) != r {
                    return false;
                }
            }
        }
        true
    }
}

fn linear_matrix(v: &VectorField) -> Vec<Vec<Q>> {
    let n = v.ring().nvars();
    v.coeffs()
        .iter()
        .map(|c| {
            (0..n)
                .map(|j| {
                    let mut e = v.ring().zero_exps();
                    e[j] = 1;
                    c.coeff(&e)
                })
                .collect()
        })
        .collect()
}

/// The field `x -> M x` on a ring with `M.len()` variables.
fn field_from_matrix(ring: &Arc<Ring>, m: &[Vec<Q>]) -> VectorField {
    let n = ring.nvars();
    let coeffs = (0..n)
        .map(|a| {
            Poly::from_terms(
                ring,
                (0..n).filter(|&c| !m[a][c].is_zero()).map(|c| {
                    let mut e = ring.zero_exps();
                    e[c] = 1;
                    (e, m[a][c].clone())
                }),
            )
        })
        .collect();
    VectorField::new(ring, coeffs).expect("field over its own ring")
}

/// Field on the coordinates `coords` of a matrix space for the map
/// `C -> image(C)`, reading the coefficient of `d/dcoord` from `image[i][j]`.
fn matrix_action_field(ring: &Arc<Ring>, image: &[Vec<Poly>], coords: &[(usize, usize)]) -> VectorField {
    let coeffs = coords.iter().map(|&(i, j)| image[i][j].clone()).collect();
    VectorField::new(ring, coeffs).expect("field over its own ring")
}

/// Fields of `E_ab` acting by left multiplication on `n x m` matrices: `sum_j x_bj d/dx_aj`.
pub fn gl_left_field(ring: &Arc<Ring>, n: usize, m: usize, a: usize, b: usize) -> VectorField {
    let mut coeffs = vec![Poly::zero(ring); n * m];
    for j in 0..m {
        coeffs[a * m + j] = Poly::var(ring, b * m + j);
    }
    VectorField::new(ring, coeffs).expect("field over its own ring")
}

/// Fields of `sl_n` acting on the left of `n x m` matrices: `E_ab` for `a != b` and `E_aa - E_(a+1)(a+1)`.
pub fn sl_left_fields(ring: &Arc<Ring>, n: usize, m: usize) -> Vec<VectorField> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                out.push(gl_left_field(ring, n, m, a, b));
            }
        }
    }
    for a in 0..n.saturating_sub(1) {
        let h = gl_left_field(ring, n, m, a, a).add(&gl_left_field(ring, n, m, a + 1, a + 1).scale(&q(-1)));
        out.push(h);
    }
    out
}

fn so_basis(n: usize) -> Vec<Vec<Vec<Q>>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut a = elementary(n, i, j);
            a[j][i] = q(-1);
            out.push(a);
        }
    }
    out
}

/// The standard symplectic form `[[0, I], [-I, 0]]`.
pub fn symplectic_form(n: usize) -> Vec<Vec<Q>> {
    let k = n / 2;
    let mut w = vec![vec![Q::zero(); n]; n];
    for i in 0..k {
        w[i][k + i] = q(1);
        w[k + i][i] = q(-1);
    }
    w
}

fn sp_basis(n: usize) -> Vec<Vec<Vec<Q>>> {
    // A^T W + W A = 0, unknowns A[r][c] at index r*n + c
    let w = symplectic_form(n);
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![Q::zero(); n * n];
            for k in 0..n {
                // (A^T W)_ij = sum_k A_ki W_kj ; (W A)_ij = sum_k W_ik A_kj
                row[k * n + i] += &w[k][j];
                row[k * n + j] += &w[i][k];
            }
            rows.push(row);
        }
    }
    linalg::nullspace(&rows, n * n)
        .into_iter()
        .map(|v| (0..n).map(|r| v[r * n..(r + 1) * n].to_vec()).collect())
        .collect()
}

/// Fields of a matrix Lie algebra acting on the left of `n x m` matrices.
fn left_fields(ring: &Arc<Ring>, n: usize, m: usize, algebra: &[Vec<Vec<Q>>]) -> Vec<VectorField> {
    let x = generic_matrix(ring, n, m);
    let coords: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    algebra
        .iter()
        .map(|a| matrix_action_field(ring, &mat_mul(&constant_matrix(ring, a), &x), &coords))
        .collect()
}

/// Fields of `C -> A C + C A^T` on a matrix space given by its generic matrix and coordinates.
fn conj_fields(ring: &Arc<Ring>, c: &[Vec<Poly>], coords: &[(usize, usize)], algebra: &[Vec<Vec<Q>>]) -> Vec<VectorField> {
    algebra
        .iter()
        .map(|a| {
            let am = constant_matrix(ring, a);
            let left = mat_mul(&am, c);
            let right = mat_mul(c, &transpose(&am));
            let sum: Vec<Vec<Poly>> = left
                .iter()
                .zip(&right)
                .map(|(l, r)| l.iter().zip(r).map(|(x, y)| x + y).collect())
                .collect();
            matrix_action_field(ring, &sum, coords)
        })
        .collect()
}

fn gl_basis(m: usize) -> Vec<Vec<Vec<Q>>> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..m {
            out.push(elementary(m, i, j));
        }
    }
    out
}

/// Kinds of representations that can be built.
#[derive(Clone, Debug, PartialEq)]
pub enum RepKind {
    /// `sl_n` on `n x m` matrices by left multiplication.
    SlLeft { n: usize, m: usize },
    /// `so_n` on symmetric `n x n` matrices by `C -> A C A^T`.
    SoSym2 { n: usize },
    /// `so_n` on `n x m` matrices by left multiplication.
    OLeft { n: usize, m: usize },
    /// `sp_n` on `n x m` matrices by left multiplication.
    SpLeft { n: usize, m: usize },
    /// `k`-th symmetric power, coordinates the monomials of degree `k` in descending order.
    SymPower { base: Box<RepKind>, k: usize },
    Tensor { a: Box<RepKind>, b: Box<RepKind> },
    /// `gl_m` on symmetric matrices by `C -> A C A^T`.
    GlConjSymm { m: usize },
    /// `gl_m` on skew-symmetric matrices by `C -> A C A^T`.
    GlConjSkew { m: usize },
    /// The standard representation of `sl_2` on `(x, y)`.
    Sl2Standard,
    Custom(LinearRep),
}

pub fn build_rep(kind: &RepKind) -> Result<LinearRep> {
    match kind {
        RepKind::SlLeft { n, m } => {
            positive(&[*n, *m])?;
            let ring = Ring::new(&matrix_vars("x", *n, *m))?;
            let fields = sl_left_fields(&ring, *n, *m);
            LinearRep::new(&format!("sl_left({n},{m})"), &ring, fields)
        }
        RepKind::SoSym2 { n } => {
            positive(&[*n])?;
            let ring = Ring::new(&sym_vars("x", *n))?;
            let c = generic_symmetric(&ring, *n);
            let coords: Vec<(usize, usize)> = (0..*n).flat_map(|i| (i..*n).map(move |j| (i, j))).collect();
            let fields = conj_fields(&ring, &c, &coords, &so_basis(*n));
            LinearRep::new(&format!("so_sym2({n})"), &ring, fields)
        }
        RepKind::OLeft { n, m } => {
            positive(&[*n, *m])?;
            let ring = Ring::new(&matrix_vars("x", *n, *m))?;
            let fields = left_fields(&ring, *n, *m, &so_basis(*n));
            LinearRep::new(&format!("o_left({n},{m})"), &ring, fields)
        }
        RepKind::SpLeft { n, m } => {
            positive(&[*n, *m])?;
            if n % 2 != 0 {
                return Err(Error::Invalid(format!("symplectic size {n} is odd")));
            }
            let ring = Ring::new(&matrix_vars("x", *n, *m))?;
            let fields = left_fields(&ring, *n, *m, &sp_basis(*n));
            LinearRep::new(&format!("sp_left({n},{m})"), &ring, fields)
        }
        RepKind::GlConjSymm { m } => {
            positive(&[*m])?;
            let ring = Ring::new(&sym_vars("s", *m))?;
            let c = generic_symmetric(&ring, *m);
            let coords: Vec<(usize, usize)> = (0..*m).flat_map(|i| (i..*m).map(move |j| (i, j))).collect();
            let fields = conj_fields(&ring, &c, &coords, &gl_basis(*m));
            LinearRep::new(&format!("gl_conj_symm({m})"), &ring, fields)
        }
        RepKind::GlConjSkew { m } => {
            if *m < 2 {
                return Err(Error::Invalid("skew matrices need size at least 2".into()));
            }
            let ring = Ring::new(&skew_vars("s", *m))?;
            let c = generic_skew(&ring, *m);
            let coords: Vec<(usize, usize)> = (0..*m).flat_map(|i| (i + 1..*m).map(move |j| (i, j))).collect();
            let fields = conj_fields(&ring, &c, &coords, &gl_basis(*m));
            LinearRep::new(&format!("gl_conj_skew({m})"), &ring, fields)
        }
        RepKind::Sl2Standard => {
            let ring = Ring::new(&["x", "y"])?;
            let x = Poly::var(&ring, 0);
            let y = Poly::var(&ring, 1);
            let z = Poly::zero(&ring);
            let e = VectorField::new(&ring, vec![z.clone(), x.clone()])?;
            let f = VectorField::new(&ring, vec![y.clone(), z])?;
            let h = VectorField::new(&ring, vec![x, -&y])?;
            LinearRep::new("sl2", &ring, vec![e, f, h])
        }
        RepKind::SymPower { base, k } => {
            positive(&[*k])?;
            let b = build_rep(base)?;
            sym_power(&b, *k)
        }
        RepKind::Tensor { a, b } => tensor(&build_rep(a)?, &build_rep(b)?),
        RepKind::Custom(r) => LinearRep::new(&r.name, &r.ring, r.fields.clone()),
    }
}

fn positive(xs: &[usize]) -> Result<()> {
    if xs.iter().any(|&x| x == 0) {
        return Err(Error::Invalid("representation parameters must be positive".into()));
    }
    Ok(())
}

/// Monomials of total degree `d` in `n` variables, in descending lexicographic order.
pub fn monomials(n: usize, d: usize) -> Vec<Exps> {
    fn rec(i: usize, left: usize, cur: &mut Exps, out: &mut Vec<Exps>) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = left as u16;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        return if d == 0 { vec![Exps::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut cur: Exps = std::iter::repeat(0).take(n).collect();
    rec(0, d, &mut cur, &mut out);
    out
}

/// `Sym^k` of a representation: coordinate `z_i` is the `i`-th monomial of degree `k`
/// in descending lexicographic order, and each field acts on it as on that monomial.
pub fn sym_power(base: &LinearRep, k: usize) -> Result<LinearRep> {
    let mons = monomials(base.nvars(), k);
    let names: Vec<String> = (0..mons.len()).map(|i| format!("z{i}")).collect();
    let ring = Ring::new(&names)?;
    let index: HashMap<Exps, usize> = mons.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let mut fields = Vec::new();
    for xi in &base.fields {
        // z_a stands for m_a, so the coefficient of d/dz_a is xi(m_a) rewritten in the z
        let mut mat = vec![vec![Q::zero(); mons.len()]; mons.len()];
        for (a, e) in mons.iter().enumerate() {
            let m = Poly::monomial(&base.ring, e.clone(), q(1));
            for (eb, c) in xi.apply(&m).terms() {
                mat[a][index[eb]] += c;
            }
        }
        fields.push(field_from_matrix(&ring, &mat));
    }
    LinearRep::new(&format!("sym{k}({})", base.name), &ring, fields)
}

/// Tensor product: coordinates `w_ab`, fields acting on either factor.
pub fn tensor(a: &LinearRep, b: &LinearRep) -> Result<LinearRep> {
    let (r, s) = (a.nvars(), b.nvars());
    let ring = Ring::new(&matrix_vars("w", r, s))?;
    let n = r * s;
    let mut fields = Vec::new();
    for k in 0..a.fields.len() {
        let m = a.field_matrix(k);
        let mut big = vec![vec![Q::zero(); n]; n];
        for i in 0..r {
            for c in 0..r {
                if !m[i][c].is_zero() {
                    for j in 0..s {
                        big[i * s + j][c * s + j] += &m[i][c];
                    }
                }
            }
        }
        fields.push(field_from_matrix(&ring, &big));
    }
    for k in 0..b.fields.len() {
        let m = b.field_matrix(k);
        let mut big = vec![vec![Q::zero(); n]; n];
        for j in 0..s {
            for c in 0..s {
                if !m[j][c].is_zero() {
                    for i in 0..r {
                        big[i * s + j][i * s + c] += &m[j][c];
                    }
                }
            }
        }
        fields.push(field_from_matrix(&ring, &big));
    }
    LinearRep::new(&format!("({})x({})", a.name, b.name), &ring, fields)
}

/// Basis of the degree-`d` polynomials killed by every field, each made monic.
pub fn invariants_of_degree(rep: &LinearRep, d: usize) -> Result<Vec<Poly>> {
    if d == 0 {
        return Err(Error::Invalid("invariant degree must be positive".into()));
    }
    let ring = &rep.ring;
    let mons = monomials(rep.nvars(), d);
    let index: HashMap<Exps, usize> = mons.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let ncols = mons.len();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for xi in &rep.fields {
        let mut block: Vec<Vec<Q>> = vec![vec![Q::zero(); ncols]; ncols];
        let mut used = vec![false; ncols];
        for (a, e) in mons.iter().enumerate() {
            let m = Poly::monomial(ring, e.clone(), q(1));
            for (eb, c) in xi.apply(&m).terms() {
                let b = index[eb];
                block[b][a] += c;
                used[b] = true;
            }
        }
        rows.extend(block.into_iter().zip(used).filter(|(_, u)| *u).map(|(r, _)| r));
    }
    let ns = linalg::nullspace(&rows, ncols);
    // echelon form so the basis is canonical
    let mut basis: Vec<Vec<Q>> = ns;
    linalg::rref(&mut basis, ncols);
    Ok(basis
        .into_iter()
        .map(|v| {
            Poly::from_terms(
                ring,
                v.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (mons[i].clone(), c)),
            )
            .monic()
        })
        .collect())
}

/// Every field kills every polynomial.
pub fn verify_invariants(rep: &LinearRep, polys: &[Poly]) -> Result<bool> {
    for p in polys {
        if !p.ring().same_vars(&rep.ring) {
            return Err(Error::RingMismatch(format!("{p} is not over the representation ring")));
        }
        if rep.fields.iter().any(|v| !v.apply(p).is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of the randomized generic-rank computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerDim {
    pub dim: usize,
    pub algebra_dim: usize,
    pub generic_rank: usize,
    pub seed: u64,
}

pub const STABILIZER_TRIALS: usize = 3;
pub const COORD_BOUND: i64 = 10_000;

/// `dim g` minus the rank of the fields at a random rational point; the
/// maximum over a few seeded trials is taken.
pub fn stabilizer_dim(rep: &LinearRep, seed: u64) -> StabilizerDim {
    let n = rep.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..STABILIZER_TRIALS {
        let point: Vec<Q> = (0..n).map(|_| q(rng.gen_range(-COORD_BOUND..=COORD_BOUND))).collect();
        let rows: Vec<Vec<Q>> = rep
            .fields
            .iter()
            .map(|v| v.coeffs().iter().map(|c| c.eval(&point)).collect())
            .collect();
        best = best.max(linalg::rank(&rows, n));
    }
    let algebra_dim = rep.algebra_dim();
    StabilizerDim {
        dim: algebra_dim - best,
        algebra_dim,
        generic_rank: best,
        seed,
    }
}

/// Dimension of `T1` predicted from the invariant degrees: `N - 2` when the degrees sum to `N`, else `N - 1`.
pub fn predict_t1_dim(n: usize, degrees: &[i64]) -> Result<usize> {
    if degrees.iter().any(|&d| d <= 0) {
        return Err(Error::Invalid("invariant degrees must be positive".into()));
    }
    if n < 2 {
        return Err(Error::Invalid("need at least two variables".into()));
    }
    let sum: i64 = degrees.iter().sum();
    Ok(if sum == n as i64 { n - 2 } else { n - 1 })
}

/// `K = { b : sum_i b_i xi_i = 0 for every field xi }` and the ideal `{ sum_i b_i x_i : b in K }`.
pub fn invariant_ideal_via_kernel(rep: &LinearRep) -> Result<Vec<Poly>> {
    let ring = &rep.ring;
    let n = rep.nvars();
    let k = rep.fields.len();
    let kernel: Vec<Vector> = if k == 0 {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { Poly::one(ring) } else { Poly::zero(ring) }).collect())
            .collect()
    } else {
        let cols: Vec<Vector> = (0..n)
            .map(|i| rep.fields.iter().map(|v| v.coeffs()[i].clone()).collect())
            .collect();
        let shifts = vec![-1i64; k];
        syzygies(ring, k, &cols, Some(&shifts))?
    };
    Ok(kernel
        .iter()
        .map(|b| {
            let mut s = Poly::zero(ring);
            for (i, bi) in b.iter().enumerate() {
                s = &s + &(bi * &Poly::var(ring, i));
            }
            s
        })
        .filter(|p| !p.is_zero())
        .collect())
}

/// A representation with a chosen set of generating invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientMap {
    pub rep: LinearRep,
    pub map: PolyMap,
    pub degrees: Vec<i64>,
    /// Whether the components were checked to be annihilated by the fields.
    pub invariance_checked: bool,
}

/// `Jac(phi)` applied to the Euler field: `deg(f_j) f_j` for each component.
pub fn invariants_via_euler(qm: &QuotientMap) -> Result<Vec<Poly>> {
    let e = VectorField::euler(&qm.map.source);
    qm.map
        .comps
        .iter()
        .map(|f| {
            if !f.is_zero() && f.homogeneous_degree().is_none() {
                return Err(Error::NotHomogeneous(format!("{f} is not homogeneous")));
            }
            Ok(e.apply(f))
        })
        .collect()
}

/// For each pair `(i, j)`, `Jac(phi) xi_i = eta_j o phi`.
pub fn equivariance_check(
    phi: &PolyMap,
    rep_x: &LinearRep,
    rep_s: &LinearRep,
    pairing: &[(usize, usize)],
) -> Result<bool> {
    for &(i, j) in pairing {
        let xi = rep_x
            .fields
            .get(i)
            .ok_or_else(|| Error::Invalid(format!("no source field {i}")))?;
        let eta = rep_s
            .fields
            .get(j)
            .ok_or_else(|| Error::Invalid(format!("no target field {j}")))?;
        let lhs: Vec<Poly> = phi.comps.iter().map(|c| xi.apply(c)).collect();
        let rhs = phi.compose_field(eta)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq)]
pub enum QuotientKind {
    /// Signed maximal minors on `n x (n+1)` matrices.
    CastlingMinors(usize),
    /// Entries of `A^T A` for `A` of size `n x m`.
    SymMatrix(usize, usize),
    /// Entries of `A^T W A` for `A` of size `n x m` and the symplectic form `W`.
    SkewForm(usize, usize),
    /// Coefficients of the characteristic polynomial of a symmetric matrix, constant term first.
    CharpolyCoeffs(usize),
    /// Signed sub-Pfaffians of a skew-symmetric `m x m` matrix, `m` odd.
    SubPfaffians(usize),
    Explicit { rep: LinearRep, polys: Vec<Poly> },
}

/// Signed maximal minors `(-1)^i det(A without column i)`, `i` from 1.
pub fn castling_minors(ring: &Arc<Ring>, n: usize) -> Vec<Poly> {
    let x = generic_matrix(ring, n, n + 1);
    (0..=n)
        .map(|i| {
            let sub: Vec<Vec<Poly>> = x
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, p)| p.clone()).collect())
                .collect();
            let d = crate::matrix::det(&sub);
            if (i + 1) % 2 == 1 {
                -&d
            } else {
                d
            }
        })
        .collect()
}

fn target_ring(names: Vec<String>, degrees: &[i64]) -> Result<Arc<Ring>> {
    Ring::with_weights(&names, degrees)
}

pub fn build_quotient_map(kind: &QuotientKind) -> Result<QuotientMap> {
    let (rep, comps, tnames, check) = match kind {
        QuotientKind::CastlingMinors(n) => {
            let rep = build_rep(&RepKind::SlLeft { n: *n, m: n + 1 })?;
            let comps = castling_minors(&rep.ring, *n);
            let names = (1..=n + 1).map(|i| format!("s{i}")).collect();
            (rep, comps, names, true)
        }
        QuotientKind::SymMatrix(n, m) => {
            let rep = build_rep(&RepKind::OLeft { n: *n, m: *m })?;
            let a = generic_matrix(&rep.ring, *n, *m);
            let p = mat_mul(&transpose(&a), &a);
            let comps = (0..*m).flat_map(|i| (i..*m).map(move |j| (i, j))).map(|(i, j)| p[i][j].clone()).collect();
            (rep, comps, sym_vars("s", *m), true)
        }
        QuotientKind::SkewForm(n, m) => {
            let rep = build_rep(&RepKind::SpLeft { n: *n, m: *m })?;
            let a = generic_matrix(&rep.ring, *n, *m);
            let w = constant_matrix(&rep.ring, &symplectic_form(*n));
            let p = mat_mul(&mat_mul(&transpose(&a), &w), &a);
            let comps = (0..*m).flat_map(|i| (i + 1..*m).map(move |j| (i, j))).map(|(i, j)| p[i][j].clone()).collect();
            (rep, comps, skew_vars("s", *m), true)
        }
        QuotientKind::CharpolyCoeffs(n) => {
            let rep = build_rep(&RepKind::SoSym2 { n: *n })?;
            let g = charpoly(&generic_symmetric(&rep.ring, *n));
            // phi = (g_n, ..., g_1)
            let comps = g[1..].iter().rev().cloned().collect();
            let names = (1..=*n).map(|i| format!("s{i}")).collect();
            (rep, comps, names, true)
        }
        QuotientKind::SubPfaffians(m) => {
            if m % 2 == 0 || *m < 3 {
                return Err(Error::Invalid(format!("sub-Pfaffians need an odd size >= 3, got {m}")));
            }
            let rep = build_rep(&RepKind::GlConjSkew { m: *m })?;
            let comps = sub_pfaffians(&generic_skew(&rep.ring, *m));
            let names = (1..=*m).map(|i| format!("p{i}")).collect();
            // the P_i are only semi-invariant: they are permuted, not killed
            (rep, comps, names, false)
        }
        QuotientKind::Explicit { rep, polys } => {
            let names = (1..=polys.len()).map(|i| format!("s{i}")).collect();
            (rep.clone(), polys.clone(), names, true)
        }
    };
    let degrees: Vec<i64> = comps
        .iter()
        .map(|c: &Poly| {
            c.homogeneous_degree()
                .filter(|_| !c.is_zero())
                .ok_or_else(|| Error::NotHomogeneous(format!("{c} is not a nonzero homogeneous invariant")))
        })
        .collect::<Result<_>>()?;
    if check && !verify_invariants(&rep, &comps)? {
        return Err(Error::Invalid("a component is not invariant".into()));
    }
    let target = target_ring(tnames, &degrees)?;
    let map = PolyMap::new(&rep.ring, &target, comps)?;
    Ok(QuotientMap {
        rep,
        map,
        degrees,
        invariance_checked: check,
    })
}

/// `[1, h_1, ..., h_n]` with `det(t I - M) = t^n + h_1 t^(n-1) + ... + h_n`.
pub fn charpoly(m: &[Vec<Poly>]) -> Vec<Poly> {
    // Faddeev-LeVerrier: M_0 = 0, h_0 = 1, M_k = M M_(k-1) + h_(k-1) I, h_k = -tr(M M_k)/k
    let n = m.len();
    let ring = m[0][0].ring().clone();
    let id: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Poly::one(&ring) } else { Poly::zero(&ring) }).collect())
        .collect();
    let mut h = vec![Poly::one(&ring)];
    let mut mk: Vec<Vec<Poly>> = vec![vec![Poly::zero(&ring); n]; n];
    for k in 1..=n {
        let prod = mat_mul(m, &mk);
        mk = prod
            .iter()
            .zip(&id)
            .map(|(r, ir)| r.iter().zip(ir).map(|(a, b)| a + &(b * &h[k - 1])).collect())
            .collect();
        let am = mat_mul(m, &mk);
        let mut tr = Poly::zero(&ring);
        for (i, row) in am.iter().enumerate() {
            tr = &tr + &row[i];
        }
        h.push(tr.scale(&crate::poly::qfrac(-1, k as i64)));
    }
    h
}

/// `(-1)^(i+1) Pf(A without row and column i)`, `i` from 1.
pub fn sub_pfaffians(a: &[Vec<Poly>]) -> Vec<Poly> {
    let m = a.len();
    (0..m)
        .map(|i| {
            let keep: Vec<usize> = (0..m).filter(|&k| k != i).collect();
            let sub: Vec<Vec<Poly>> = keep
                .iter()
                .map(|&r| keep.iter().map(|&c| a[r][c].clone()).collect())
                .collect();
            let p = pfaffian(&sub);
            if i % 2 == 0 {
                p
            } else {
                -&p
            }
        })
        .collect()
}

/// Closed form for the generic stabilizer dimension of `Sp(n)` on `n x m` matrices.
pub fn symplectic_stabilizer_formula(n: usize, m: usize) -> Option<usize> {
    let (n, m) = (n as i64, m as i64);
    if n % 2 != 0 || m < 1 {
        return None;
    }
    let v = if 2 * m <= n {
        ((n - m) * (n - m) + m) / 2
    } else if m <= n + 1 {
        ((n - m) * (n - m) + n - m) / 2
    } else {
        return None;
    };
    Some(v as usize)
}

/// Random point helper shared with tests.
#[cfg(test)]
pub(crate) fn random_point(n: usize, seed: u64) -> Vec<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| q(rng.gen_range(-20..=20))).collect()
}
