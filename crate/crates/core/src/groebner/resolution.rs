use std::sync::Arc;

use super::{
    engine::Engine, is_zero_vector, module_order, syzygies, to_elem, vector_degree, GroebnerBasis,
    ModulePresentation, PosKind, Vector,
};
use crate::error::{Error, Result};
use crate::poly::Ring;
#[cfg(test)]
use crate::poly::Poly;

/// A minimal generating subset of `gens`.
///
/// With row degrees the input must be homogeneous and the result is a graded
/// minimal generating set; otherwise redundant generators are removed greedily.
pub fn minimal_generators(
    ring: &Arc<Ring>,
    rank: usize,
    gens: &[Vector],
    row_degrees: Option<&[i64]>,
) -> Result<Vec<Vector>> {
    let nonzero: Vec<&Vector> = gens.iter().filter(|g| !is_zero_vector(g)).collect();
    match row_degrees {
        Some(rd) => {
            let mut with_deg: Vec<(i64, usize, &Vector)> = Vec::new();
            for (i, g) in nonzero.iter().enumerate() {
                let d = vector_degree(g, ring.weights(), rd)
                    .ok_or_else(|| Error::NotGraded("generator is not homogeneous".into()))?
                    .unwrap_or(0);
                with_deg.push((d, i, g));
            }
            with_deg.sort_by_key(|&(d, i, g)| (d, g.iter().map(|p| p.nterms()).sum::<usize>(), i));
            let order = module_order(ring, rank, Some(rd), PosKind::Top);
            let mut eng = Engine::new(order.clone(), rank);
            let mut out = Vec::new();
            for (_, _, g) in with_deg {
                let (e, _) = to_elem(g, &order, 0);
                let (r, _) = eng.reduce(e.clone(), false)?;
                if !r.is_zero() {
                    eng.add_generators(vec![e])?;
                    out.push(g.clone());
                }
            }
            Ok(out)
        }
        None => {
            let mut keep: Vec<Vector> = nonzero.into_iter().cloned().collect();
            let mut i = keep.len();
            while i > 0 {
                i -= 1;
                let others: Vec<Vector> = keep
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, v)| v.clone())
                    .collect();
                let mut gb = GroebnerBasis::new(ring, rank, &others)?;
                if gb.contains(&keep[i])? {
                    keep.remove(i);
                }
            }
            Ok(keep)
        }
    }
}

/// Removes unit entries by row and column operations; the cokernel is unchanged.
pub fn prune_presentation(p: &ModulePresentation) -> ModulePresentation {
    let mut rows: Vec<usize> = (0..p.rank).collect();
    let mut cols: Vec<Vector> = p.gens.iter().filter(|c| !is_zero_vector(c)).cloned().collect();
    loop {
        let mut hit = None;
        'search: for (j, c) in cols.iter().enumerate() {
            for &i in &rows {
                if c[i].is_unit() {
                    hit = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = hit else { break };
        let pivot = cols.remove(j);
        let inv = pivot[i].constant_coeff().recip();
        for c in cols.iter_mut() {
            if c[i].is_zero() {
                continue;
            }
            let factor = c[i].scale(&inv);
            for r in 0..c.len() {
                if !pivot[r].is_zero() {
                    c[r] = &c[r] - &(&factor * &pivot[r]);
                }
            }
        }
        rows.retain(|&r| r != i);
        cols.retain(|c| rows.iter().any(|&r| !c[r].is_zero()));
    }
    let gens: Vec<Vector> = cols
        .into_iter()
        .map(|c| rows.iter().map(|&r| c[r].clone()).collect())
        .collect();
    ModulePresentation {
        ring: p.ring.clone(),
        rank: rows.len(),
        gens,
        row_degrees: p
            .row_degrees
            .as_ref()
            .map(|d| rows.iter().map(|&r| d[r]).collect()),
    }
}

/// Minimal graded free resolution `... -> F_2 -> F_1 -> F_0` of a cokernel.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: Arc<Ring>,
    /// `maps[k]` is the differential `F_{k+1} -> F_k`, by columns.
    pub maps: Vec<ModulePresentation>,
    /// Degrees of the basis of each `F_k`.
    pub degrees: Vec<Vec<i64>>,
}

impl Resolution {
    /// Ranks of the free modules, starting with `F_0`.
    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.len()).collect()
    }

    /// Projective dimension; `None` for the zero module.
    pub fn pdim(&self) -> Option<usize> {
        let r = self.ranks();
        if r.first().copied().unwrap_or(0) == 0 {
            return None;
        }
        Some(r.iter().rposition(|&x| x > 0).unwrap())
    }

    pub fn is_zero_module(&self) -> bool {
        self.pdim().is_none()
    }
}

/// Minimal free resolution of the cokernel of a graded presentation.
pub fn minimal_resolution(p: &ModulePresentation) -> Result<Resolution> {
    if !p.is_graded() {
        return Err(Error::NotGraded(
            "minimal resolutions need a homogeneous presentation".into(),
        ));
    }
    let ring = &p.ring;
    let pruned = prune_presentation(p);
    let rd0 = pruned.row_degrees.clone().unwrap();
    let mut degrees = vec![rd0.clone()];
    let mut maps = Vec::new();
    if pruned.rank == 0 {
        return Ok(Resolution {
            ring: ring.clone(),
            maps,
            degrees,
        });
    }
    let mut cols = minimal_generators(ring, pruned.rank, &pruned.gens, Some(&rd0))?;
    let mut rd = rd0;
    let mut rank = pruned.rank;
    while !cols.is_empty() {
        let m = ModulePresentation {
            ring: ring.clone(),
            rank,
            gens: cols.clone(),
            row_degrees: Some(rd.clone()),
        };
        let cd = m.col_degrees().unwrap();
        maps.push(m);
        degrees.push(cd.clone());
        let syz = syzygies(ring, rank, &cols, Some(&rd))?;
        let next = minimal_generators(ring, cols.len(), &syz, Some(&cd))?;
        rank = cols.len();
        rd = cd;
        cols = next;
    }
    Ok(Resolution {
        ring: ring.clone(),
        maps,
        degrees,
    })
}

/// `a * b` for matrices given by columns.
#[cfg(test)]
pub(crate) fn compose(a: &[Vector], b: &[Vector], ring: &Arc<Ring>, rows: usize) -> Vec<Vector> {
    b.iter()
        .map(|col| {
            let mut out = vec![Poly::zero(ring); rows];
            for (k, x) in col.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for r in 0..rows {
                    if !a[k][r].is_zero() {
                        out[r] = &out[r] + &(x * &a[k][r]);
                    }
                }
            }
            out
        })
        .collect()
}
