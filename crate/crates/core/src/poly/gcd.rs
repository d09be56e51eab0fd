//! Greatest common divisors through ideal intersection.

use num_traits::Zero;

use super::{Poly, Q};
use crate::error::{Error, Result};
use crate::groebner::intersect_ideals;

/// Least common multiple: the generator of `(p) ∩ (q)`, normalized.
pub fn lcm(p: &Poly, q: &Poly) -> Result<Poly> {
    p.ensure_same(q)?;
    if p.is_zero() || q.is_zero() {
        return Ok(Poly::zero(p.ring()));
    }
    if p.is_constant() {
        return Ok(q.normalized());
    }
    if q.is_constant() {
        return Ok(p.normalized());
    }
    let gens = intersect_ideals(p.ring(), &[p.clone()], &[q.clone()])?;
    match gens.as_slice() {
        [g] => Ok(g.normalized()),
        _ => Err(Error::Invalid(
            "intersection of principal ideals is not principal".into(),
        )),
    }
}

/// Greatest common divisor, normalized to primitive integer coefficients
/// with positive leading coefficient.
pub fn gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    p.ensure_same(q)?;
    if p.is_zero() {
        return Ok(q.normalized());
    }
    if q.is_zero() {
        return Ok(p.normalized());
    }
    if p.is_constant() || q.is_constant() {
        return Ok(Poly::one(p.ring()));
    }
    if q.divides(p) {
        return Ok(q.normalized());
    }
    if p.divides(q) {
        return Ok(p.normalized());
    }
    // lcm = q * (p / gcd)
    let l = lcm(p, q)?;
    l.div_exact(q)
        .and_then(|cofactor| p.div_exact(&cofactor))
        .map(|g| g.normalized())
        .ok_or_else(|| Error::Invalid("lcm is not a multiple of both inputs".into()))
}

/// Coefficients in `x_var` of `p` with every other variable set to `point`.
fn specialize(p: &Poly, var: usize, point: &[i64]) -> Vec<Q> {
    let mut out = vec![Q::zero(); p.degree_in(var).unwrap_or(0) as usize + 1];
    for (e, c) in p.terms() {
        let mut v = c.clone();
        for (k, &ek) in e.iter().enumerate() {
            if k != var && ek > 0 {
                v *= Q::from_integer(point[k].into()).pow(ek as i32);
            }
        }
        out[e[var] as usize] += v;
    }
    out
}

fn trim(a: &mut Vec<Q>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

/// Degree of the gcd of two univariate polynomials, coefficients from low to high.
fn univariate_gcd_degree(mut a: Vec<Q>, mut b: Vec<Q>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lb = b.last().unwrap().clone();
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = a.last().unwrap() / &lb;
            for (i, c) in b.iter().enumerate() {
                a[shift + i] -= &f * c;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Exact sufficient test: `p` is squarefree when, for each variable, some
/// specialization of the others keeps the leading coefficient and leaves
/// `p` coprime to its derivative. A specialized gcd never has lower degree.
fn certainly_squarefree(p: &Poly) -> bool {
    let n = p.ring().nvars();
    (0..n).all(|var| {
        let d = p.degree_in(var).unwrap_or(0);
        if d == 0 {
            return true;
        }
        (0..4).any(|attempt| {
            let point: Vec<i64> = (0..n).map(|k| 2 + ((k as i64 * 7 + attempt * 13) % 29)).collect();
            let s = specialize(p, var, &point);
            if s[d as usize].is_zero() {
                return false;
            }
            let ds: Vec<Q> = s
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer((i as i64).into()))
                .collect();
            univariate_gcd_degree(s, ds) == 0
        })
    })
}

/// `p` divided by the gcd of `p` and all its partial derivatives.
pub fn squarefree_part(p: &Poly) -> Result<Poly> {
    if p.is_zero() || p.is_constant() {
        return Ok(p.normalized());
    }
    if certainly_squarefree(p) {
        return Ok(p.normalized());
    }
    let mut g = p.clone();
    for i in 0..p.ring().nvars() {
        let d = p.derivative(i);
        if d.is_zero() {
            continue;
        }
        g = gcd(&g, &d)?;
        if g.is_constant() {
            return Ok(p.normalized());
        }
    }
    p.div_exact(&g)
        .map(|x| x.normalized())
        .ok_or_else(|| Error::Invalid("gcd does not divide".into()))
}
