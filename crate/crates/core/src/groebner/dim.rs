use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{GroebnerBasis, Vector};
use crate::error::Result;
use crate::poly::{wdeg, Exps, Poly, Ring};

/// Codimension, with the unit ideal (empty variety) as infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Codim {
    Finite(usize),
    Infinite,
}

impl Codim {
    pub fn from_dim(n: usize, dim: i64) -> Codim {
        if dim < 0 {
            Codim::Infinite
        } else {
            Codim::Finite(n - dim as usize)
        }
    }

    pub fn at_least(&self, k: usize) -> bool {
        match self {
            Codim::Infinite => true,
            Codim::Finite(c) => *c >= k,
        }
    }
}

impl fmt::Display for Codim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codim::Finite(c) => write!(f, "{c}"),
            Codim::Infinite => write!(f, "inf"),
        }
    }
}

/// Krull dimension of `R / I`; `-1` for the unit ideal.
pub fn krull_dim(ring: &Arc<Ring>, gens: &[Poly]) -> Result<i64> {
    let vs: Vec<Vector> = gens.iter().map(|g| vec![g.clone()]).collect();
    krull_dim_module(ring, 1, &vs)
}

/// Krull dimension of the cokernel of the columns `gens` in `R^rank`; `-1` if it is zero.
pub fn krull_dim_module(ring: &Arc<Ring>, rank: usize, gens: &[Vector]) -> Result<i64> {
    let gb = GroebnerBasis::new(ring, rank, gens)?;
    Ok(dim_from_basis(&gb))
}

pub(crate) fn dim_from_basis(gb: &GroebnerBasis) -> i64 {
    let n = gb.ring().nvars();
    let mut best = -1i64;
    for c in 0..gb.rank() {
        let lts: Vec<&Exps> = gb
            .elems()
            .iter()
            .filter(|e| e.t[0].c == c)
            .map(|e| &e.t[0].e)
            .collect();
        if lts.iter().any(|e| e.iter().all(|&x| x == 0)) {
            continue;
        }
        let d = monomial_dim(n, &lts);
        best = best.max(d as i64);
    }
    best
}

/// Dimension of `R / J` for a monomial ideal `J` without the unit monomial:
/// `n` minus the size of a smallest set of variables meeting every support.
fn monomial_dim(n: usize, gens: &[&Exps]) -> usize {
    let mut supports: Vec<Vec<usize>> = gens
        .iter()
        .map(|e| (0..n).filter(|&i| e[i] > 0).collect())
        .collect();
    supports.sort_by_key(|s| s.len());
    // drop supersets
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for s in supports {
        if !minimal.iter().any(|m| m.iter().all(|v| s.contains(v))) {
            minimal.push(s);
        }
    }
    let mut best = n;
    let mut chosen = vec![false; n];
    hitting_set(&minimal, &mut chosen, 0, &mut best);
    n - best
}

fn hitting_set(sets: &[Vec<usize>], chosen: &mut Vec<bool>, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    let open = sets.iter().find(|s| !s.iter().any(|&v| chosen[v]));
    match open {
        None => *best = size,
        Some(s) => {
            for &v in s {
                chosen[v] = true;
                hitting_set(sets, chosen, size + 1, best);
                chosen[v] = false;
            }
        }
    }
}

/// Numerator of the Hilbert series of `R / J` for a monomial ideal, with
/// `R` graded by `weights`: `H(t) = N(t) / prod (1 - t^w_i)`.
pub fn hilbert_numerator(weights: &[i64], gens: &[Exps]) -> Vec<i128> {
    let mut g: Vec<Exps> = gens.to_vec();
    minimize(&mut g);
    numerator(weights, g)
}

fn minimize(g: &mut Vec<Exps>) {
    g.sort_by_key(|e| e.iter().map(|&x| x as u32).sum::<u32>());
    let mut out: Vec<Exps> = Vec::new();
    for e in g.drain(..) {
        if !out.iter().any(|m| m.iter().zip(&e).all(|(&a, &b)| a <= b)) {
            out.push(e);
        }
    }
    *g = out;
}

fn poly_sub_shift(a: &mut Vec<i128>, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &x) in b.iter().enumerate() {
        a[i + shift] -= x;
    }
}

fn numerator(weights: &[i64], gens: Vec<Exps>) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    // pairwise coprime generators: product of (1 - t^deg)
    let coprime = gens.iter().enumerate().all(|(i, a)| {
        gens[i + 1..]
            .iter()
            .all(|b| a.iter().zip(b.iter()).all(|(&x, &y)| x == 0 || y == 0))
    });
    if coprime {
        let mut acc = vec![1i128];
        for g in &gens {
            let d = wdeg(weights, g) as usize;
            let mut next = acc.clone();
            poly_sub_shift(&mut next, &acc, d);
            acc = next;
        }
        return acc;
    }
    // N(J) = N(J') - t^deg(m) N(J' : m)
    let mut rest = gens;
    let m = rest.pop().unwrap();
    let d = wdeg(weights, &m) as usize;
    let mut colon: Vec<Exps> = rest
        .iter()
        .map(|e| e.iter().zip(m.iter()).map(|(&a, &b)| a.saturating_sub(b)).collect())
        .collect();
    minimize(&mut colon);
    let mut a = numerator(weights, rest);
    let b = numerator(weights, colon);
    poly_sub_shift(&mut a, &b, d);
    a
}

/// Dimension from the pole order at `t = 1` of the Hilbert series of the initial module.
pub fn krull_dim_hilbert(gb: &GroebnerBasis) -> i64 {
    let n = gb.ring().nvars() as i64;
    let w = gb.ring().weights();
    let mut best = -1;
    for c in 0..gb.rank() {
        let lts: Vec<Exps> = gb
            .elems()
            .iter()
            .filter(|e| e.t[0].c == c)
            .map(|e| e.t[0].e.clone())
            .collect();
        let mut num = hilbert_numerator(w, &lts);
        while num.last() == Some(&0) {
            num.pop();
        }
        if num.is_empty() {
            continue;
        }
        // order of vanishing at t = 1
        let mut k = 0;
        loop {
            let s: i128 = num.iter().sum();
            if s != 0 {
                break;
            }
            // divide by (1 - t)
            let mut q = vec![0i128; num.len() - 1];
            let mut carry = 0i128;
            for i in 0..num.len() - 1 {
                carry += num[i];
                q[i] = carry;
            }
            num = q;
            k += 1;
        }
        best = best.max(n - k);
    }
    best
}
