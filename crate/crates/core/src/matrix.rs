//! Small dense matrices of polynomials.

use std::collections::HashMap;
use std::sync::Arc;

use crate::groebner::Vector;
use crate::poly::{Poly, Ring};

/// Determinant by expansion along rows, memoizing minors on column subsets.
pub fn det(rows: &[Vec<Poly>]) -> Poly {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    assert!(n > 0 && n < 64, "determinant size out of range");
    let ring = rows[0][0].ring().clone();
    // minors of the first k rows, keyed by column subset
    let mut prev: HashMap<u64, Poly> = HashMap::new();
    prev.insert(0, Poly::one(&ring));
    for row in rows {
        let mut next: HashMap<u64, Poly> = HashMap::new();
        for (&set, minor) in &prev {
            if minor.is_zero() {
                continue;
            }
            for (c, entry) in row.iter().enumerate() {
                if set & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                // sign of inserting column c as the last row's column
                let above = (set >> (c + 1)).count_ones() as usize;
                let term = entry * minor;
                let slot = next.entry(set | (1 << c)).or_insert_with(|| Poly::zero(&ring));
                *slot = if above % 2 == 0 { &*slot + &term } else { &*slot - &term };
            }
        }
        prev = next;
    }
    prev.remove(&((1u64 << n) - 1)).unwrap_or_else(|| Poly::zero(&ring))
}

/// Determinant of the square matrix with the given columns.
pub fn det_cols(cols: &[Vector]) -> Poly {
    let n = cols.len();
    let rows: Vec<Vec<Poly>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    det(&rows)
}

/// All maximal minors of a matrix with `rows <= cols`, by row-major input.
pub fn maximal_minors(rows: &[Vec<Poly>]) -> Vec<Poly> {
    let m = rows.len();
    let n = rows.first().map(|r| r.len()).unwrap_or(0);
    if m == 0 || m > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for subset in subsets(n, m) {
        let sub: Vec<Vec<Poly>> = rows
            .iter()
            .map(|r| subset.iter().map(|&j| r[j].clone()).collect())
            .collect();
        out.push(det(&sub));
    }
    out
}

/// Sorted `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `M v` for a matrix given by columns.
pub fn mat_vec(ring: &Arc<Ring>, rows: usize, cols: &[Vector], v: &[Poly]) -> Vector {
    let mut out = vec![Poly::zero(ring); rows];
    for (c, x) in cols.iter().zip(v) {
        if x.is_zero() {
            continue;
        }
        for r in 0..rows {
            if !c[r].is_zero() {
                out[r] = &out[r] + &(x * &c[r]);
            }
        }
    }
    out
}

/// Jacobian matrix by rows: entry `(j, i)` is the derivative of `comps[j]` in variable `i`.
pub fn jacobian_rows(comps: &[Poly]) -> Vec<Vec<Poly>> {
    comps.iter().map(|f| f.gradient()).collect()
}

/// Columns of a row-major matrix.
pub fn columns(rows: &[Vec<Poly>]) -> Vec<Vector> {
    let n = rows.first().map(|r| r.len()).unwrap_or(0);
    (0..n).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn determinant_matches_cofactor_formula() {
        let r = Ring::new(&["a", "b", "c", "d", "e", "f", "g", "h", "i"]).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let m = vec![
            vec![p("a"), p("b"), p("c")],
            vec![p("d"), p("e"), p("f")],
            vec![p("g"), p("h"), p("i")],
        ];
        assert_eq!(det(&m), p("a*e*i - a*f*h - b*d*i + b*f*g + c*d*h - c*e*g"));
        let two = vec![vec![p("a"), p("b")], vec![p("c"), p("d")]];
        assert_eq!(det(&two), p("a*d - b*c"));
    }

    #[test]
    fn minors_of_generic_two_by_three() {
        let r = Ring::new(&["a", "b", "c", "d", "e", "f"]).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let m = vec![vec![p("a"), p("b"), p("c")], vec![p("d"), p("e"), p("f")]];
        let mins = maximal_minors(&m);
        assert_eq!(mins, vec![p("a*e - b*d"), p("a*f - c*d"), p("b*f - c*e")]);
        assert_eq!(subsets(4, 2).len(), 6);
    }
}
