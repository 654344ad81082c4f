//! Dense matrices over a [`Scalar`], used as an independent numeric check
//! on the support computations in [`crate::relation`].

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::relation::{PairSet, SupportRelation};
use crate::scalar::Scalar;
use num_traits::FromPrimitive;

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrices need a positive size");
        Matrix {
            n,
            entries: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 1..=n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Rows of entries, 1-based semantics, 0-based storage.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix { n, entries })
    }

    /// The matrix unit `e_ij = e_i e_j*`.
    pub fn matrix_unit(n: usize, i: usize, j: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
            return Err(Error::IndexOutOfRange { i, j, n });
        }
        let mut m = Matrix::zeros(n);
        m.set(i, j, T::one());
        Ok(m)
    }

    /// Entry `k` of the pair list (row-major) gets the `k`-th prime, so no
    /// product of such matrices can cancel by accident.
    pub fn generic_from_support(support: &PairSet) -> Self
    where
        T: FromPrimitive,
    {
        let mut m = Matrix::zeros(support.size());
        for ((i, j), p) in support.iter().zip(primes()) {
            m.set(i, j, T::from_u64(p).expect("small primes are representable"));
        }
        m
    }

    /// Every pair of `support` set to one.
    pub fn indicator(support: &PairSet) -> Self {
        let mut m = Matrix::zeros(support.size());
        for (i, j) in support.iter() {
            m.set(i, j, T::one());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[(i - 1) * self.n + (j - 1)] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero)
    }

    pub fn support(&self) -> PairSet {
        let mut s = PairSet::empty(self.n);
        for i in 1..=self.n {
            for j in 1..=self.n {
                if !self.get(i, j).is_zero() {
                    s.insert(i, j);
                }
            }
        }
        s
    }

    /// Membership in `A(P)`: zero off `P`.
    pub fn is_in(&self, p: &SupportRelation) -> bool {
        self.n == p.size() && self.support().is_subset(p.pairs())
    }

    fn check_size(&self, other: &Matrix<T>) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        self.check_size(other)?;
        let n = self.n;
        let mut out = Matrix::<T>::zeros(n);
        for i in 1..=n {
            for k in 1..=n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 1..=n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = (i - 1) * n + (j - 1);
                    out.entries[idx] = out.entries[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        self.check_size(other)?;
        Ok(Matrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix<T> {
        let mut out = Matrix::zeros(self.n);
        for i in 1..=self.n {
            for j in 1..=self.n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// `*` for nonzero entries and `0` otherwise.
    pub fn star_pattern(&self) -> String {
        self.support().star_pattern()
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// `e_ii · a · e_jj`: everything but entry `(i, j)` cleared.
pub fn compress<T: Scalar>(i: usize, a: &Matrix<T>, j: usize) -> Result<Matrix<T>> {
    let n = a.size();
    Matrix::matrix_unit(n, i, i)?
        .mul(a)?
        .mul(&Matrix::matrix_unit(n, j, j)?)
}

/// Support of the two-sided ideal of `A(P)` generated by `g`, found by
/// multiplying by the matrix units of `P` on the left, then on the right,
/// until no product has a new support. Products with matrix units have a
/// support that depends only on the support of the factor, so one
/// representative per support is kept.
pub fn numeric_generated_support<T: Scalar>(p: &SupportRelation, g: &Matrix<T>, max_iters: usize) -> Result<PairSet> {
    if g.size() != p.size() {
        return Err(Error::SizeMismatch {
            expected: p.size(),
            found: g.size(),
        });
    }
    if let Some((i, j)) = g.support().first_outside(p.pairs()) {
        return Err(Error::NotContained(i, j));
    }
    let n = p.size();
    let mut support = PairSet::empty(n);
    if g.is_zero() {
        return Ok(support);
    }
    let units: Vec<Matrix<T>> = p
        .pairs()
        .iter()
        .map(|(i, j)| Matrix::matrix_unit(n, i, j))
        .collect::<Result<_>>()?;

    let mut seen: HashSet<PairSet> = HashSet::from([g.support()]);
    support = support.union(&g.support());
    let mut frontier = vec![g.clone()];
    let mut iters = 0;
    while !frontier.is_empty() {
        if iters >= max_iters {
            return Err(Error::NoFixedPoint(max_iters));
        }
        iters += 1;
        let mut next = Vec::new();
        for left in [true, false] {
            let mut produced = Vec::new();
            for m in frontier.iter().chain(&next) {
                for u in &units {
                    let prod = if left { u.mul(m)? } else { m.mul(u)? };
                    if prod.is_zero() {
                        continue;
                    }
                    let s = prod.support();
                    if seen.insert(s.clone()) {
                        support = support.union(&s);
                        produced.push(prod);
                    }
                }
            }
            next.extend(produced);
        }
        frontier = next;
    }
    Ok(support)
}

/// `n²`, the default iteration cap.
pub fn default_max_iters(n: usize) -> usize {
    n * n
}

/// 2, 3, 5, 7, ...
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0))
}
