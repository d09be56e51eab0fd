//! Randomized algebraic invariants of polynomials, Gröbner bases and resolutions.

use std::sync::Arc;

use freediv::groebner::{minimal_resolution, syzygies, GroebnerBasis, ModulePresentation, Vector};
use freediv::poly::{gcd, parse_poly, squarefree_part, Exps, Poly, Ring, Q};
use proptest::prelude::*;

fn ring() -> Arc<Ring> {
    Ring::new(&["x", "y", "z"]).unwrap()
}

type Terms = Vec<((u16, u16, u16), i64)>;

fn terms(max_deg: u16, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg, 0..=max_deg), -5i64..=5), 0..=max_terms)
}

fn homogeneous_terms(deg: u16, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec(((0..=deg, 0..=deg), 1i64..=4), 1..=max_terms).prop_map(move |v| {
        v.into_iter()
            .filter(|((a, b), _)| a + b <= deg)
            .map(|((a, b), c)| ((a, b, deg - a - b), c))
            .collect()
    })
}

fn build(r: &Arc<Ring>, t: &Terms) -> Poly {
    Poly::from_terms(
        r,
        t.iter()
            .map(|&((a, b, c), k)| (Exps::from_slice(&[a, b, c]), Q::from_integer(k.into()))),
    )
}

fn poly(max_deg: u16, max_terms: usize) -> impl Strategy<Value = Poly> {
    terms(max_deg, max_terms).prop_map(|t| build(&ring(), &t))
}

fn same_ring(ps: &[Poly]) -> Vec<Poly> {
    let r = ring();
    ps.iter().map(|p| p.relabel(&r).unwrap()).collect()
}

fn combine(r: &Arc<Ring>, coeffs: &[Poly], cols: &[Vector], row: usize) -> Poly {
    let mut acc = Poly::zero(r);
    for (c, g) in coeffs.iter().zip(cols) {
        acc = &acc + &(c * &g[row]);
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(a in poly(3, 5), b in poly(3, 5), c in poly(3, 5)) {
        let [a, b, c]: [Poly; 3] = same_ring(&[a, b, c]).try_into().unwrap();
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz_rule(a in poly(3, 5), b in poly(3, 5), v in 0usize..3) {
        let [a, b]: [Poly; 2] = same_ring(&[a, b]).try_into().unwrap();
        let lhs = (&a * &b).derivative(v);
        let rhs = &(&a.derivative(v) * &b) + &(&a * &b.derivative(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn division_identity(a in poly(4, 6), d in poly(2, 3)) {
        let [a, d]: [Poly; 2] = same_ring(&[a, d]).try_into().unwrap();
        prop_assume!(!d.is_zero());
        let (q, r) = a.div_rem(&d);
        prop_assert_eq!(&(&q * &d) + &r, a);
    }

    #[test]
    fn gcd_divides_and_factors_out(a in poly(2, 3), b in poly(2, 3), c in poly(2, 3)) {
        let [a, b, c]: [Poly; 3] = same_ring(&[a, b, c]).try_into().unwrap();
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let ac = &a * &c;
        let bc = &b * &c;
        let g = gcd(&ac, &bc).unwrap();
        prop_assert!(g.divides(&ac) && g.divides(&bc));
        prop_assert!(c.divides(&g));
    }

    #[test]
    fn squarefree_part_of_square(a in poly(2, 3)) {
        let a = same_ring(&[a]).remove(0);
        prop_assume!(!a.is_zero());
        let s = squarefree_part(&a.pow(2)).unwrap();
        prop_assert!(s.divides(&a));
        let t = squarefree_part(&a).unwrap();
        prop_assert!(t.divides(&s) && s.divides(&t));
    }

    #[test]
    fn print_then_parse(a in poly(4, 6)) {
        let a = same_ring(&[a]).remove(0);
        let b = parse_poly(&a.to_string(), &a.ring()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn groebner_basis_is_closed_and_contains_ideal(
        gens in prop::collection::vec(terms(2, 3), 1..=3),
        mult in prop::collection::vec(terms(1, 2), 3),
    ) {
        let r = ring();
        let gs: Vec<Poly> = gens.iter().map(|t| build(&r, t)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!gs.is_empty());
        let cols: Vec<Vector> = gs.iter().map(|g| vec![g.clone()]).collect();
        let mut gb = GroebnerBasis::new(&r, 1, &cols).unwrap();
        prop_assert!(gb.verify().unwrap());
        for g in &gs {
            prop_assert!(gb.contains(std::slice::from_ref(g)).unwrap());
        }
        let ms: Vec<Poly> = mult.iter().map(|t| build(&r, t)).collect();
        let f = combine(&r, &ms, &cols, 0);
        prop_assert!(gb.contains(&[f]).unwrap());
        for e in gb.elements() {
            prop_assert!(gb.normal_form(&e).unwrap().iter().all(|p| p.is_zero()));
        }
    }

    #[test]
    fn syzygies_annihilate_columns(gens in prop::collection::vec((terms(2, 3), terms(2, 3)), 1..=3)) {
        let r = ring();
        let cols: Vec<Vector> = gens.iter().map(|(a, b)| vec![build(&r, a), build(&r, b)]).collect();
        for s in syzygies(&r, 2, &cols, None).unwrap() {
            prop_assert!(combine(&r, &s, &cols, 0).is_zero());
            prop_assert!(combine(&r, &s, &cols, 1).is_zero());
        }
    }

    #[test]
    fn resolution_is_a_complex(gens in prop::collection::vec(homogeneous_terms(2, 3), 1..=4)) {
        let r = ring();
        let cols: Vec<Vector> = gens.iter().map(|t| vec![build(&r, t)]).filter(|v| !v[0].is_zero()).collect();
        prop_assume!(!cols.is_empty());
        let p = ModulePresentation::graded(&r, cols, vec![0]).unwrap();
        let res = minimal_resolution(&p).unwrap();
        prop_assert!(res.ranks().len() <= 5);
        for pair in res.maps.windows(2) {
            let (outer, inner) = (&pair[0], &pair[1]);
            for c in &inner.gens {
                for row in 0..outer.rank {
                    prop_assert!(combine(&r, c, &outer.gens, row).is_zero());
                }
            }
        }
        // Hilbert syzygy theorem in three variables
        prop_assert!(res.pdim().is_none_or(|d| d <= 3));
    }
}
