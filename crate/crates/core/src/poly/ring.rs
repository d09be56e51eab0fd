use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector of a monomial.
pub type Exps = SmallVec<[u16; 12]>;

/// Term orders on monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Degree (in the ring weights) then reverse lexicographic.
    Grevlex,
    Lex,
    /// Given weight vector first, ties broken by grevlex.
    Weighted(Vec<i64>),
    /// Consecutive blocks of variables; blocks compared lexicographically,
    /// grevlex inside each block. The first block is eliminated first.
    Block(Vec<usize>),
}

impl MonomialOrder {
    pub fn cmp(&self, weights: &[i64], a: &[u16], b: &[u16]) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(weights, a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Weighted(w) => {
                let da = wdeg(w, a);
                let db = wdeg(w, b);
                da.cmp(&db).then_with(|| grevlex(weights, a, b))
            }
            MonomialOrder::Block(sizes) => {
                let mut start = 0;
                for &s in sizes {
                    let end = (start + s).min(a.len());
                    let o = grevlex(&weights[start..end], &a[start..end], &b[start..end]);
                    if o != Ordering::Equal {
                        return o;
                    }
                    start = end;
                }
                if start < a.len() {
                    grevlex(&weights[start..], &a[start..], &b[start..])
                } else {
                    Ordering::Equal
                }
            }
        }
    }
}

pub(crate) fn wdeg(w: &[i64], a: &[u16]) -> i64 {
    w.iter().zip(a).map(|(&w, &e)| w * e as i64).sum()
}

fn grevlex(weights: &[i64], a: &[u16], b: &[u16]) -> Ordering {
    let o = wdeg(weights, a).cmp(&wdeg(weights, b));
    if o != Ordering::Equal {
        return o;
    }
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

/// A polynomial ring over the rationals: variable names, positive weights, term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    vars: Vec<String>,
    weights: Vec<i64>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Arc<Ring>> {
        let w = vec![1; vars.len()];
        Ring::with_weights(vars, &w)
    }

    pub fn with_weights<S: AsRef<str>>(vars: &[S], weights: &[i64]) -> Result<Arc<Ring>> {
        Ring::with_order(vars, weights, MonomialOrder::Grevlex)
    }

    pub fn with_order<S: AsRef<str>>(
        vars: &[S],
        weights: &[i64],
        order: MonomialOrder,
    ) -> Result<Arc<Ring>> {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        if weights.len() != vars.len() {
            return Err(Error::Invalid(format!(
                "{} weights given for {} variables",
                weights.len(),
                vars.len()
            )));
        }
        if weights.iter().any(|&w| w <= 0) {
            return Err(Error::Invalid("weights must be positive".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v
                .chars()
                .next()
                .map(|c| c.is_ascii_alphabetic() || c == '_')
                .unwrap_or(false)
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Invalid(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate variable {v}")));
            }
        }
        match &order {
            MonomialOrder::Weighted(w) if w.len() != vars.len() => {
                return Err(Error::Invalid("order weight vector has wrong length".into()))
            }
            MonomialOrder::Block(b) if b.iter().sum::<usize>() != vars.len() => {
                return Err(Error::Invalid("block sizes do not cover the variables".into()))
            }
            _ => {}
        }
        Ok(Arc::new(Ring {
            vars,
            weights: weights.to_vec(),
            order,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn cmp_exps(&self, a: &[u16], b: &[u16]) -> Ordering {
        self.order.cmp(&self.weights, a, b)
    }

    /// Same variables and weights, different term order.
    pub fn reordered(&self, order: MonomialOrder) -> Result<Arc<Ring>> {
        Ring::with_order(&self.vars, &self.weights, order)
    }

    /// Same variables and order, new weights.
    pub fn reweighted(&self, weights: &[i64]) -> Result<Arc<Ring>> {
        let order = match &self.order {
            MonomialOrder::Weighted(w) if w == &self.weights => {
                MonomialOrder::Weighted(weights.to_vec())
            }
            o => o.clone(),
        };
        Ring::with_order(&self.vars, weights, order)
    }

    /// Rings are compatible when they have the same variables.
    pub fn same_vars(&self, other: &Ring) -> bool {
        self.vars == other.vars
    }

    pub fn zero_exps(&self) -> Exps {
        SmallVec::from_elem(0, self.vars.len())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.vars.join(","))?;
        if self.weights.iter().any(|&w| w != 1) {
            let w: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
            write!(f, " weights({})", w.join(","))?;
        }
        Ok(())
    }
}
