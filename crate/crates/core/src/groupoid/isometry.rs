//! Normalising partial isometries act on the diagonal as partial maps.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A partial bijection of `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialHomeo {
    pub n: usize,
    pub map: BTreeMap<usize, usize>,
}

impl PartialHomeo {
    pub fn domain(&self) -> Vec<usize> {
        self.map.keys().copied().collect()
    }

    pub fn range(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.map.values().copied().collect();
        r.sort_unstable();
        r
    }

    pub fn apply(&self, j: usize) -> Option<usize> {
        self.map.get(&j).copied()
    }
}

/// `j ↦ i` whenever `v e_jj v* = e_ii`. Entries must be zero or unimodular
/// with at most one nonzero per row and per column.
pub fn partial_homeo_of_isometry<T: Scalar>(v: &Matrix<T>) -> Result<PartialHomeo> {
    let n = v.size();
    let mut column_seen = vec![false; n];
    for (r, row) in v.rows().enumerate() {
        let mut nonzero = 0;
        for (c, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !x.is_unimodular() {
                return Err(Error::NotNormalising(format!(
                    "entry ({}, {}) is not unimodular",
                    r + 1,
                    c + 1
                )));
            }
            nonzero += 1;
            if nonzero > 1 {
                return Err(Error::NotNormalising(format!("row {} has two nonzero entries", r + 1)));
            }
            if std::mem::replace(&mut column_seen[c], true) {
                return Err(Error::NotNormalising(format!(
                    "column {} has two nonzero entries",
                    c + 1
                )));
            }
        }
    }

    let vs = v.adjoint();
    let mut map = BTreeMap::new();
    for j in 1..=n {
        let w = v.mul(&Matrix::matrix_unit(n, j, j)?)?.mul(&vs)?;
        if w.is_zero() {
            continue;
        }
        let i = (1..=n)
            .find(|&i| w == Matrix::matrix_unit(n, i, i).expect("in range"))
            .ok_or_else(|| Error::NotNormalising(format!("v e_{j}{j} v* is not a diagonal unit")))?;
        map.insert(j, i);
    }
    Ok(PartialHomeo { n, map })
}
