//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept sorted in decreasing order for the ring's term order, with no
//! zero coefficients, so structural equality is mathematical equality.

mod gcd;
mod parse;
mod ring;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use gcd::{gcd, lcm, squarefree_part};
pub use parse::{parse_poly, parse_poly_at};
pub use ring::{Exps, MonomialOrder, Ring};

pub(crate) use ring::wdeg;

/// Rational scalars.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qfrac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: Vec<(Exps, Q)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_vars(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Q) -> Poly {
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            p.terms.push((ring.zero_exps(), c));
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Poly {
        Poly::constant(ring, Q::one())
    }

    pub fn from_int(ring: &Arc<Ring>, n: i64) -> Poly {
        Poly::constant(ring, q(n))
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Poly {
        let mut e = ring.zero_exps();
        e[i] = 1;
        Poly {
            ring: ring.clone(),
            terms: vec![(e, Q::one())],
        }
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Poly> {
        ring.var_index(name)
            .map(|i| Poly::var(ring, i))
            .ok_or_else(|| Error::Invalid(format!("unknown variable {name}")))
    }

    pub fn monomial(ring: &Arc<Ring>, e: Exps, c: Q) -> Poly {
        assert_eq!(e.len(), ring.nvars());
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            p.terms.push((e, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Exps, Q)>>(ring: &Arc<Ring>, it: I) -> Poly {
        let mut map: HashMap<Exps, Q> = HashMap::new();
        for (e, c) in it {
            assert_eq!(e.len(), ring.nvars());
            *map.entry(e).or_insert_with(Q::zero) += c;
        }
        let mut terms: Vec<(Exps, Q)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp_exps(&b.0, &a.0));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Takes terms already sorted decreasingly, distinct and nonzero.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<(Exps, Q)>) -> Poly {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp_exps(&w[0].0, &w[1].0) == Ordering::Greater));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Exps, Q)] {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn constant_coeff(&self) -> Q {
        match self.terms.last() {
            Some((e, c)) if e.iter().all(|&x| x == 0) => c.clone(),
            _ => Q::zero(),
        }
    }

    pub fn coeff(&self, e: &[u16]) -> Q {
        self.terms
            .binary_search_by(|t| self.ring.cmp_exps(e, &t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Q::zero())
    }

    pub fn leading_term(&self) -> Option<(&Exps, &Q)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    pub fn leading_coeff(&self) -> Q {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Q::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    /// Maximum weighted degree for the ring weights.
    pub fn weighted_degree(&self) -> Option<i64> {
        self.degree_for(self.ring.weights())
    }

    pub fn degree_for(&self, w: &[i64]) -> Option<i64> {
        self.terms.iter().map(|(e, _)| wdeg(w, e)).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.iter().map(|(e, _)| e[var]).max()
    }

    /// Weighted degree if all terms share it (zero polynomial: `Some(None)`).
    pub fn homogeneous_degree_for(&self, w: &[i64]) -> Option<Option<i64>> {
        let mut it = self.terms.iter().map(|(e, _)| wdeg(w, e));
        match it.next() {
            None => Some(None),
            Some(d) => {
                if it.all(|x| x == d) {
                    Some(Some(d))
                } else {
                    None
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree_for(self.ring.weights()).is_some()
    }

    /// Weighted degree under the ring weights, `None` if not homogeneous or zero.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        self.homogeneous_degree_for(self.ring.weights()).flatten()
    }

    /// Variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|(e, _)| e[i] > 0))
            .collect()
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &[u16], c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (add_exps(e, m), x * c))
                .collect(),
        }
    }

    fn check_ring(&self, other: &Poly) {
        assert!(
            self.ring.same_vars(&other.ring),
            "polynomials over different rings: {} vs {}",
            self.ring,
            other.ring
        );
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.ensure_same(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.ensure_same(other)?;
        Ok(self * other)
    }

    pub fn ensure_same(&self, other: &Poly) -> Result<()> {
        if self.ring.same_vars(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)))
        }
    }

    fn merge(&self, other: &Poly, sign: bool) -> Poly {
        self.check_ring(other);
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match ring.cmp_exps(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if sign { b[j].1.clone() } else { -&b[j].1 };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign { &a[i].1 + &b[j].1 } else { &a[i].1 - &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if sign { t.1.clone() } else { -&t.1 };
            out.push((t.0.clone(), c));
        }
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] > 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[var] -= 1;
                (e2, c * q(e[var] as i64))
            });
        // differentiation can reorder terms under weighted orders, so re-sort
        Poly::from_terms(&self.ring, terms)
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.ring.nvars()).map(|i| self.derivative(i)).collect()
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.ring.nvars());
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.iter()) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            s += t;
        }
        s
    }

    /// Substitutes `images[i]` for variable `i`; the result lives in the images' ring.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Invalid(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Err(Error::Invalid("substitution into a ring with no variables".into())),
        };
        for p in images {
            if !p.ring.same_vars(&target) {
                return Err(Error::RingMismatch("substitution images over different rings".into()));
            }
        }
        // cache powers of each image
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(&target), p.clone()]).collect();
        let mut acc: HashMap<Exps, Q> = HashMap::new();
        for (e, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize];
            }
            for (e2, c2) in t.terms {
                *acc.entry(e2).or_insert_with(Q::zero) += c2;
            }
        }
        Ok(Poly::from_terms(&target, acc))
    }

    /// Moves the polynomial to another ring, sending variable `i` to `map[i]`.
    pub fn embed(&self, target: &Arc<Ring>, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.ring.nvars());
        Poly::from_terms(
            target,
            self.terms.iter().map(|(e, c)| {
                let mut e2 = target.zero_exps();
                for (i, &k) in e.iter().enumerate() {
                    e2[map[i]] += k;
                }
                (e2, c.clone())
            }),
        )
    }

    /// Same variables, re-sorted for another ring (order or weights may differ).
    pub fn to_ring(&self, target: &Arc<Ring>) -> Result<Poly> {
        if !self.ring.same_vars(target) {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, target)));
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| target.cmp_exps(&b.0, &a.0));
        Ok(Poly {
            ring: target.clone(),
            terms,
        })
    }

    /// Renames into a ring with the same number of variables (positional).
    pub fn relabel(&self, target: &Arc<Ring>) -> Result<Poly> {
        if self.ring.nvars() != target.nvars() {
            return Err(Error::RingMismatch("relabel needs equal variable counts".into()));
        }
        let map: Vec<usize> = (0..target.nvars()).collect();
        Ok(self.embed(target, &map))
    }

    /// Gcd of numerators over lcm of denominators, sign of the leading coefficient.
    pub fn content(&self) -> Q {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Q::zero();
        }
        let c = Q::new(num, den);
        if self.leading_coeff().is_negative() {
            -c
        } else {
            c
        }
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn normalized(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.scale(&c.recip())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        self.check_ring(d);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero(&self.ring));
        }
        let (de, dc) = d.leading_term().unwrap();
        let dc_inv = dc.recip();
        let mut rem = self.clone();
        let mut quot: Vec<(Exps, Q)> = Vec::new();
        while let Some((e, c)) = rem.leading_term() {
            let m = sub_exps(e, de)?;
            let k = c * &dc_inv;
            rem = &rem - &d.mul_monomial(&m, &k);
            quot.push((m, k));
        }
        Some(Poly::from_sorted(&self.ring, quot))
    }

    /// Division by one polynomial: `self = q * d + r` with no term of `r`
    /// divisible by the leading monomial of `d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        self.check_ring(d);
        let zero = Poly::zero(&self.ring);
        let Some((de, dc)) = d.leading_term() else {
            return (zero, self.clone());
        };
        let dc_inv = dc.recip();
        let mut p = self.clone();
        let mut quot: Vec<(Exps, Q)> = Vec::new();
        let mut rem: Vec<(Exps, Q)> = Vec::new();
        while let Some((e, c)) = p.leading_term() {
            match sub_exps(e, de) {
                Some(m) => {
                    let k = c * &dc_inv;
                    p = &p - &d.mul_monomial(&m, &k);
                    quot.push((m, k));
                }
                None => {
                    let t = (e.clone(), c.clone());
                    p = &p - &Poly::monomial(&self.ring, t.0.clone(), t.1.clone());
                    rem.push(t);
                }
            }
        }
        (Poly::from_terms(&self.ring, quot), Poly::from_terms(&self.ring, rem))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_exact(self).is_some()
    }

    /// `Some(c)` with `self == c * other`, `c` a nonzero rational.
    pub fn unit_multiple_of(&self, other: &Poly) -> Option<Q> {
        if !self.ring.same_vars(&other.ring) || self.terms.len() != other.terms.len() {
            return None;
        }
        if self.is_zero() {
            return None;
        }
        let c = &self.terms[0].1 / &other.terms[0].1;
        for ((e1, c1), (e2, c2)) in self.terms.iter().zip(&other.terms) {
            if e1 != e2 || c1 != &(c2 * &c) {
                return None;
            }
        }
        Some(c)
    }

    /// Homogeneous component of weighted degree `d`.
    pub fn part_of_degree(&self, w: &[i64], d: i64) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| wdeg(w, e) == d)
                .cloned()
                .collect(),
        }
    }
}

/// `Some(c)` with `p == c * q` for a nonzero rational `c`.
pub fn unit_multiple_eq(p: &Poly, q: &Poly) -> Option<Q> {
    p.unit_multiple_of(q)
}

pub(crate) fn add_exps(a: &[u16], b: &[u16]) -> Exps {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x.checked_add(y).expect("exponent overflow"))
        .collect()
}

pub(crate) fn sub_exps(a: &[u16], b: &[u16]) -> Option<Exps> {
    let mut out = Exps::with_capacity(a.len());
    for (&x, &y) in a.iter().zip(b) {
        if x < y {
            return None;
        }
        out.push(x - y);
    }
    Some(out)
}

pub(crate) fn divides_exps(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x <= y)
}

pub(crate) fn lcm_exps(a: &[u16], b: &[u16]) -> Exps {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.merge(rhs, true)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.merge(rhs, false)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.check_ring(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ring);
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return self.mul_monomial(e, c);
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return rhs.mul_monomial(e, c);
        }
        let mut acc: HashMap<Exps, Q> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = add_exps(e1, e2);
                let c = c1 * c2;
                match acc.get_mut(&e) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        Poly::from_terms(&self.ring, acc)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

fn fmt_coeff(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(self.ring.vars()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars()[i], x)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", fmt_coeff(&a))?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_coeff(&a), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<Ring> {
        Ring::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn division_with_remainder() {
        let r = ring();
        let p = parse_poly("x^2*y + x*y^2 + y^2 + 3", &r).unwrap();
        let d = parse_poly("x*y - 1", &r).unwrap();
        let (q, rem) = p.div_rem(&d);
        assert_eq!(&(&q * &d) + &rem, p);
        let (lt, _) = d.leading_term().unwrap();
        assert!(rem.terms().iter().all(|(e, _)| !divides_exps(lt, e)));
        let (q, rem) = p.div_rem(&Poly::zero(&r));
        assert!(q.is_zero());
        assert_eq!(rem, p);
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &ring()).unwrap()
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&p("x+y") * &p("x-y"), p("x^2-y^2"));
        assert_eq!(p("(x+1)^3"), p("x^3+3*x^2+3*x+1"));
        assert_eq!(&p("x+y") - &p("x+y"), Poly::zero(&ring()));
        assert_eq!(p("x^2*y").derivative(0), p("2*x*y"));
    }

    #[test]
    fn display_round_trip() {
        let f = p("-1/2*x^3*z + 4*y - 7/3 + x*y*z");
        let s = f.to_string();
        assert_eq!(parse_poly(&s, &ring()).unwrap(), f);
    }

    #[test]
    fn exact_division() {
        let a = p("x^2-y^2");
        assert_eq!(a.div_exact(&p("x-y")), Some(p("x+y")));
        assert_eq!(a.div_exact(&p("x-z")), None);
    }

    #[test]
    fn normalize() {
        let f = p("-2/3*x + 4/9*y");
        assert_eq!(f.normalized(), p("3*x - 2*y"));
        assert_eq!(p("6*x+4").unit_multiple_of(&p("3*x+2")), Some(q(2)));
        assert_eq!(p("6*x+4").unit_multiple_of(&p("3*x+1")), None);
    }

    #[test]
    fn compose_substitutes() {
        let r2 = Ring::new(&["s", "t"]).unwrap();
        let images = vec![
            parse_poly("s+t", &r2).unwrap(),
            parse_poly("s*t", &r2).unwrap(),
            parse_poly("2", &r2).unwrap(),
        ];
        let f = p("x^2 - 4*y + z");
        assert_eq!(
            f.compose(&images).unwrap(),
            parse_poly("s^2 - 2*s*t + t^2 + 2", &r2).unwrap()
        );
    }

    #[test]
    fn weighted_homogeneity() {
        let r = Ring::with_weights(&["x", "y"], &[3, 2]).unwrap();
        let f = parse_poly("x^2 - y^3", &r).unwrap();
        assert_eq!(f.homogeneous_degree(), Some(6));
        assert!(!parse_poly("x^2 - y^2", &r).unwrap().is_homogeneous());
    }
}
