//! Exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::poly::Q;

/// Row-reduces in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    if !m[r][j].is_zero() {
                        let d = &f * &m[r][j];
                        m[i][j] -= d;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{ x : A x = 0 }`, one vector per free column.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `A x = b`, if any.
pub fn solve(rows: &[Vec<Q>], b: &[Q], ncols: usize) -> Option<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, ncols + 1);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = m[r][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    #[test]
    fn nullspace_of_rank_one() {
        let a = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot: Q = a[0].iter().zip(v).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(rank(&a, 3), 1);
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        assert_eq!(solve(&a, &[q(3), q(1)], 2), Some(vec![q(2), q(1)]));
        let b = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert_eq!(solve(&b, &[q(1), q(3)], 2), None);
    }
}
