use std::fmt;
use std::sync::Arc;

use super::{column_shifts, is_zero_vector, Vector};
use crate::error::{Error, Result};
use crate::poly::{Poly, Ring};

/// A matrix given by its columns, read either as generators of a submodule of
/// `ring^rank` or as a presentation of the cokernel, with optional degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct ModulePresentation {
    pub ring: Arc<Ring>,
    pub rank: usize,
    pub gens: Vec<Vector>,
    /// Degree of each basis vector of `ring^rank` when graded.
    pub row_degrees: Option<Vec<i64>>,
}

impl ModulePresentation {
    pub fn new(ring: &Arc<Ring>, rank: usize, gens: Vec<Vector>) -> ModulePresentation {
        ModulePresentation {
            ring: ring.clone(),
            rank,
            gens,
            row_degrees: None,
        }
    }

    /// Graded presentation; every column must be homogeneous for `row_degrees`.
    pub fn graded(ring: &Arc<Ring>, gens: Vec<Vector>, row_degrees: Vec<i64>) -> Result<ModulePresentation> {
        let p = ModulePresentation {
            ring: ring.clone(),
            rank: row_degrees.len(),
            gens,
            row_degrees: Some(row_degrees),
        };
        if p.col_degrees().is_none() {
            return Err(Error::NotGraded("a column is not homogeneous".into()));
        }
        Ok(p)
    }

    /// Builds from rows of a matrix.
    pub fn from_rows(ring: &Arc<Ring>, rows: &[Vec<Poly>]) -> ModulePresentation {
        let rank = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let gens = (0..ncols)
            .map(|j| rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        ModulePresentation::new(ring, rank, gens)
    }

    pub fn ncols(&self) -> usize {
        self.gens.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Poly {
        &self.gens[col][row]
    }

    pub fn rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rank)
            .map(|i| self.gens.iter().map(|c| c[i].clone()).collect())
            .collect()
    }

    pub fn is_graded(&self) -> bool {
        self.col_degrees().is_some()
    }

    /// Column degrees when graded (zero columns get degree 0).
    pub fn col_degrees(&self) -> Option<Vec<i64>> {
        let rd = self.row_degrees.as_ref()?;
        column_shifts(&self.gens, self.ring.weights(), rd)
    }

    pub fn without_zero_columns(&self) -> ModulePresentation {
        let mut p = self.clone();
        p.gens.retain(|c| !is_zero_vector(c));
        p
    }

    /// Same columns, ring re-sorted for another term order.
    pub fn to_ring(&self, ring: &Arc<Ring>) -> Result<ModulePresentation> {
        let gens = self
            .gens
            .iter()
            .map(|c| c.iter().map(|p| p.to_ring(ring)).collect::<Result<Vector>>())
            .collect::<Result<Vec<Vector>>>()?;
        Ok(ModulePresentation {
            ring: ring.clone(),
            rank: self.rank,
            gens,
            row_degrees: self.row_degrees.clone(),
        })
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.gens.iter().enumerate() {
            let entries: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{j}] ({})", entries.join(", "))?;
        }
        Ok(())
    }
}
