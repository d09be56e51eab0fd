//! Buchberger's algorithm for submodules of free modules, fraction-free over the integers.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::limits::Meter;
use crate::error::Result;
use crate::poly::{divides_exps, lcm_exps, sub_exps, wdeg, Exps, MonomialOrder};

/// How module positions enter the comparison of terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PosKind {
    /// Term first, position as tie-break (lower index is larger).
    Top,
    /// Position first.
    Pot,
    /// Positions below the given index dominate the rest; term-over-position inside each group.
    Split(usize),
}

/// A term order on a free module.
#[derive(Clone, Debug)]
pub struct ModOrder {
    pub mono: MonomialOrder,
    /// Weights for the degree used by `mono` and by the graded comparison.
    pub weights: Vec<i64>,
    /// Compare the shifted weighted degree before anything but the position group.
    pub graded: bool,
    /// Degree of each basis vector.
    pub shifts: Vec<i64>,
    pub pos: PosKind,
}

impl ModOrder {
    #[inline]
    pub fn cmp(&self, ea: &[u16], ca: usize, eb: &[u16], cb: usize) -> Ordering {
        match self.pos {
            PosKind::Split(k) => {
                let ga = ca < k;
                let gb = cb < k;
                if ga != gb {
                    return if ga { Ordering::Greater } else { Ordering::Less };
                }
            }
            PosKind::Pot => {
                if ca != cb {
                    return cb.cmp(&ca);
                }
            }
            PosKind::Top => {}
        }
        if self.graded {
            let da = wdeg(&self.weights, ea) + self.shifts[ca];
            let db = wdeg(&self.weights, eb) + self.shifts[cb];
            if da != db {
                return da.cmp(&db);
            }
        }
        match self.mono.cmp(&self.weights, ea, eb) {
            Ordering::Equal => cb.cmp(&ca),
            o => o,
        }
    }

    fn sugar_of(&self, e: &[u16], c: usize) -> i64 {
        wdeg(&self.weights, e) + self.shifts[c]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub e: Exps,
    pub c: usize,
    pub k: BigInt,
}

/// Sorted (decreasing) sparse vector with integer coefficients.
#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub t: Vec<Term>,
    pub sugar: i64,
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    pub fn lt(&self) -> &Term {
        &self.t[0]
    }

    pub fn from_terms(mut t: Vec<Term>, order: &ModOrder) -> Elem {
        t.retain(|x| !x.k.is_zero());
        t.sort_by(|a, b| order.cmp(&b.e, b.c, &a.e, a.c));
        // merge equal positions
        let mut out: Vec<Term> = Vec::with_capacity(t.len());
        for x in t {
            if let Some(last) = out.last_mut() {
                if last.c == x.c && last.e == x.e {
                    last.k += x.k;
                    continue;
                }
            }
            out.push(x);
        }
        out.retain(|x| !x.k.is_zero());
        let sugar = out
            .iter()
            .map(|x| order.sugar_of(&x.e, x.c))
            .max()
            .unwrap_or(0);
        Elem { t: out, sugar }
    }

    /// Divides by the coefficient gcd and makes the leading coefficient positive.
    /// Returns the factor the element was multiplied by.
    pub fn make_primitive(&mut self) -> BigRational {
        if self.t.is_empty() {
            return BigRational::one();
        }
        let mut g = BigInt::zero();
        for x in &self.t {
            g = g.gcd(&x.k);
            if g.is_one() {
                break;
            }
        }
        if self.t[0].k.is_negative() {
            g = -g;
        }
        if g.is_one() {
            return BigRational::one();
        }
        for x in &mut self.t {
            x.k = &x.k / &g;
        }
        BigRational::new(BigInt::one(), g)
    }

    pub fn bits(&self) -> u64 {
        self.t.iter().map(|x| x.k.bits()).max().unwrap_or(0)
    }
}

fn mask(e: &[u16]) -> u64 {
    let mut m = 0u64;
    for (i, &x) in e.iter().enumerate() {
        if x > 0 {
            m |= 1 << (i % 64);
        }
    }
    m
}

/// `a * f[..]` with the term at `p` cancelled against `b * m * g`.
fn reduce_at(f: &[Term], p: usize, g: &Elem, order: &ModOrder) -> (Vec<Term>, BigInt) {
    let tf = &f[p];
    let lt = g.lt();
    let m = sub_exps(&tf.e, &lt.e).expect("reducer must divide");
    let gcd = tf.k.gcd(&lt.k);
    let mut a = &lt.k / &gcd;
    let mut b = &tf.k / &gcd;
    if a.is_negative() {
        a = -a;
        b = -b;
    }
    let a_is_one = a.is_one();
    let mut out: Vec<Term> = Vec::with_capacity(f.len() + g.t.len());
    for x in &f[..p] {
        let k = if a_is_one { x.k.clone() } else { &x.k * &a };
        out.push(Term {
            e: x.e.clone(),
            c: x.c,
            k,
        });
    }
    let rest = &f[p + 1..];
    let gt = &g.t[1..];
    let scaled = |x: &Term| Term {
        e: x.e.clone(),
        c: x.c,
        k: if a_is_one { x.k.clone() } else { &x.k * &a },
    };
    let (mut i, mut j) = (0, 0);
    let mut pending: Option<Term> = None;
    loop {
        if pending.is_none() && j < gt.len() {
            let y = &gt[j];
            j += 1;
            pending = Some(Term {
                e: crate::poly::add_exps(&y.e, &m),
                c: y.c,
                k: -(&y.k * &b),
            });
        }
        let ord = match (rest.get(i), pending.as_ref()) {
            (Some(x), Some(y)) => order.cmp(&x.e, x.c, &y.e, y.c),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => break,
        };
        match ord {
            Ordering::Greater => {
                out.push(scaled(&rest[i]));
                i += 1;
            }
            Ordering::Less => out.push(pending.take().unwrap()),
            Ordering::Equal => {
                let y = pending.take().unwrap();
                let x = &rest[i];
                let k = if a_is_one { &x.k + &y.k } else { &x.k * &a + &y.k };
                if !k.is_zero() {
                    out.push(Term { e: y.e, c: y.c, k });
                }
                i += 1;
            }
        }
    }
    (out, a)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exps,
    c: usize,
    sugar: i64,
}

/// Incremental Buchberger state.
pub(crate) struct Engine {
    pub order: ModOrder,
    pub elems: Vec<Elem>,
    masks: Vec<u64>,
    pub active: Vec<bool>,
    by_comp: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    meter: Meter,
    product_criterion: bool,
}

impl Engine {
    pub fn new(order: ModOrder, rank: usize) -> Engine {
        let product_criterion = rank == 1;
        Engine {
            order,
            elems: Vec::new(),
            masks: Vec::new(),
            active: Vec::new(),
            by_comp: vec![Vec::new(); rank],
            pairs: Vec::new(),
            meter: Meter::new(),
            product_criterion,
        }
    }

    fn find_reducer(&self, e: &[u16], c: usize, skip: Option<usize>) -> Option<usize> {
        let me = mask(e);
        for &i in &self.by_comp[c] {
            if self.masks[i] & !me != 0 || Some(i) == skip {
                continue;
            }
            if divides_exps(&self.elems[i].t[0].e, e) {
                return Some(i);
            }
        }
        None
    }

    /// Reduces `f`; with `full` every term is reduced, otherwise only the leading one.
    /// Returns the result and the rational factor `s` with `result = s*f - combination`.
    pub fn reduce(&mut self, f: Elem, full: bool) -> Result<(Elem, BigRational)> {
        self.reduce_skipping(f, full, None)
    }

    fn reduce_skipping(
        &mut self,
        mut f: Elem,
        full: bool,
        skip: Option<usize>,
    ) -> Result<(Elem, BigRational)> {
        let mut scale = BigRational::one();
        let mut p = 0;
        let mut steps_since_content = 0u32;
        let start_bits = f.bits().max(64);
        while p < f.t.len() {
            let hit = self.find_reducer(&f.t[p].e, f.t[p].c, skip);
            match hit {
                None => {
                    if !full {
                        break;
                    }
                    p += 1;
                }
                Some(i) => {
                    self.meter.charge(1)?;
                    let g = &self.elems[i];
                    let m_deg = wdeg(&self.order.weights, &f.t[p].e) - wdeg(&self.order.weights, &g.t[0].e);
                    let sugar = f.sugar.max(g.sugar + m_deg);
                    let (t, a) = reduce_at(&f.t, p, g, &self.order);
                    if !a.is_one() {
                        scale *= BigRational::from_integer(a);
                    }
                    f = Elem { t, sugar };
                    steps_since_content += 1;
                    if steps_since_content >= 8 || f.bits() > 4 * start_bits {
                        steps_since_content = 0;
                        scale *= f.make_primitive();
                    }
                }
            }
        }
        scale *= f.make_primitive();
        Ok((f, scale))
    }

    pub fn add_generators(&mut self, gens: Vec<Elem>) -> Result<()> {
        let mut gens: Vec<Elem> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let order = self.order.clone();
        gens.sort_by(|a, b| {
            let (x, y) = (a.lt(), b.lt());
            order.cmp(&x.e, x.c, &y.e, y.c)
        });
        for g in gens {
            let (h, _) = self.reduce(g, false)?;
            if !h.is_zero() {
                self.insert(h);
            }
        }
        self.run()
    }

    fn run(&mut self) -> Result<()> {
        while !self.pairs.is_empty() {
            let mut best = 0;
            for k in 1..self.pairs.len() {
                let (a, b) = (&self.pairs[k], &self.pairs[best]);
                let better = match a.sugar.cmp(&b.sugar) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => self.order.cmp(&a.lcm, a.c, &b.lcm, b.c) == Ordering::Less,
                };
                if better {
                    best = k;
                }
            }
            let pair = self.pairs.swap_remove(best);
            super::limits::count_pair();
            let s = self.spoly(&pair);
            let (h, _) = self.reduce(s, false)?;
            if !h.is_zero() {
                self.insert(h);
            }
        }
        Ok(())
    }

    fn spoly(&self, p: &Pair) -> Elem {
        let f = &self.elems[p.i];
        let g = &self.elems[p.j];
        let mf = sub_exps(&p.lcm, &f.t[0].e).unwrap();
        let mg = sub_exps(&p.lcm, &g.t[0].e).unwrap();
        let gcd = f.t[0].k.gcd(&g.t[0].k);
        let af = &g.t[0].k / &gcd;
        let ag = &f.t[0].k / &gcd;
        let mut terms: Vec<Term> = Vec::with_capacity(f.t.len() + g.t.len());
        for x in &f.t[1..] {
            terms.push(Term {
                e: crate::poly::add_exps(&x.e, &mf),
                c: x.c,
                k: &x.k * &af,
            });
        }
        for x in &g.t[1..] {
            terms.push(Term {
                e: crate::poly::add_exps(&x.e, &mg),
                c: x.c,
                k: -(&x.k * &ag),
            });
        }
        let mut e = Elem::from_terms(terms, &self.order);
        e.sugar = p.sugar;
        e
    }

    fn insert(&mut self, mut h: Elem) {
        h.make_primitive();
        let hn = self.elems.len();
        let ht = h.t[0].clone();
        let hw = wdeg(&self.order.weights, &ht.e);

        // candidate pairs with h
        let mut cands: Vec<(Pair, bool)> = Vec::new();
        for &g in &self.by_comp[ht.c] {
            let gt = &self.elems[g].t[0];
            let l = lcm_exps(&gt.e, &ht.e);
            let coprime = self.product_criterion && gt.e.iter().zip(&ht.e).all(|(&a, &b)| a == 0 || b == 0);
            let lw = wdeg(&self.order.weights, &l);
            let sugar = (self.elems[g].sugar + lw - wdeg(&self.order.weights, &gt.e)).max(h.sugar + lw - hw);
            cands.push((
                Pair {
                    i: g,
                    j: hn,
                    lcm: l,
                    c: ht.c,
                    sugar,
                },
                coprime,
            ));
        }
        // chain criterion among the new pairs
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        let mut rest = cands;
        while let Some((p, coprime)) = rest.pop() {
            let dominated = !coprime
                && (rest.iter().any(|(q, _)| divides_exps(&q.lcm, &p.lcm))
                    || kept.iter().any(|(q, _)| divides_exps(&q.lcm, &p.lcm)));
            if !dominated {
                kept.push((p, coprime));
            }
        }
        // old pairs made redundant by h
        let order_c = ht.c;
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if p.c != order_c || !divides_exps(&ht.e, &p.lcm) {
                return true;
            }
            let li = lcm_exps(&elems[p.i].t[0].e, &ht.e);
            let lj = lcm_exps(&elems[p.j].t[0].e, &ht.e);
            li == p.lcm || lj == p.lcm
        });
        for (p, coprime) in kept {
            if !coprime {
                self.pairs.push(p);
            }
        }
        // drop basis elements whose leading term h divides
        let mut still = Vec::with_capacity(self.by_comp[ht.c].len() + 1);
        for &g in &self.by_comp[ht.c] {
            if divides_exps(&ht.e, &self.elems[g].t[0].e) {
                self.active[g] = false;
            } else {
                still.push(g);
            }
        }
        still.push(hn);
        self.by_comp[ht.c] = still;
        self.masks.push(mask(&ht.e));
        self.active.push(true);
        self.elems.push(h);
    }

    /// Minimal basis, tail-reduced and primitive, sorted by increasing leading term.
    pub fn reduced_basis(&mut self) -> Result<Vec<Elem>> {
        let idx: Vec<usize> = (0..self.elems.len()).filter(|&i| self.active[i]).collect();
        let mut out = Vec::with_capacity(idx.len());
        for &i in &idx {
            let g = self.elems[i].clone();
            let (r, _) = self.reduce_skipping(g, true, Some(i))?;
            out.push(r);
        }
        let order = self.order.clone();
        out.sort_by(|a, b| {
            let (x, y) = (a.lt(), b.lt());
            order.cmp(&x.e, x.c, &y.e, y.c)
        });
        Ok(out)
    }

    /// True if every S-pair of the active elements reduces to zero.
    pub fn check_closed(&mut self) -> Result<bool> {
        let idx: Vec<usize> = (0..self.elems.len()).filter(|&i| self.active[i]).collect();
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                let (ti, tj) = (&self.elems[i].t[0], &self.elems[j].t[0]);
                if ti.c != tj.c {
                    continue;
                }
                let p = Pair {
                    i,
                    j,
                    lcm: lcm_exps(&ti.e, &tj.e),
                    c: ti.c,
                    sugar: 0,
                };
                let s = self.spoly(&p);
                let (r, _) = self.reduce(s, true)?;
                if !r.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl Engine {
    /// Wraps an existing Gröbner basis for reductions only.
    pub fn from_basis(order: ModOrder, rank: usize, basis: Vec<Elem>) -> Engine {
        let mut e = Engine::new(order, rank);
        for (i, g) in basis.into_iter().enumerate() {
            e.by_comp[g.t[0].c].push(i);
            e.masks.push(mask(&g.t[0].e));
            e.active.push(true);
            e.elems.push(g);
        }
        e
    }
}
