//! Finitely supported functions on the truncated groupoid, with
//! convolution and involution.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::scalar::{Dyadic, Scalar};

use super::gset::{Arrow, GSet};
use super::words::Word;

/// A function `G → T` stored by its nonzero values.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupoidFunction<T> {
    depth: usize,
    values: BTreeMap<Arrow, T>,
}

impl<T: Scalar> GroupoidFunction<T> {
    pub fn zero(depth: usize) -> Self {
        GroupoidFunction {
            depth,
            values: BTreeMap::new(),
        }
    }

    pub fn from_values(depth: usize, values: impl IntoIterator<Item = (Arrow, T)>) -> Result<Self> {
        let mut f = GroupoidFunction::zero(depth);
        for (a, x) in values {
            if a.0.depth() != depth || a.1.depth() != depth {
                return Err(Error::DepthMismatch {
                    expected: depth,
                    found: a.depth(),
                });
            }
            f.accumulate(a, x);
        }
        Ok(f)
    }

    /// `χ_E`.
    pub fn indicator(e: &GSet) -> Self {
        Self::scaled_indicator(e, T::one())
    }

    pub fn scaled_indicator(e: &GSet, c: T) -> Self {
        let mut f = GroupoidFunction::zero(e.depth());
        if !c.is_zero() {
            f.values = e.pairs().iter().map(|a| (a.clone(), c.clone())).collect();
        }
        f
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn value(&self, a: &Arrow) -> T {
        self.values.get(a).cloned().unwrap_or_else(T::zero)
    }

    pub fn values(&self) -> &BTreeMap<Arrow, T> {
        &self.values
    }

    pub fn support(&self) -> BTreeSet<Arrow> {
        self.values.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    fn accumulate(&mut self, a: Arrow, x: T) {
        use std::collections::btree_map::Entry;
        match self.values.entry(a) {
            Entry::Vacant(v) => {
                if !x.is_zero() {
                    v.insert(x);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + x;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_depth(other)?;
        let mut out = self.clone();
        for (a, x) in &other.values {
            out.accumulate(a.clone(), x.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = GroupoidFunction::zero(self.depth);
        for (a, x) in &self.values {
            out.accumulate(a.clone(), x.clone() * c.clone());
        }
        out
    }

    /// `(f ∗ h)(a, b) = Σ_c f(a, c) h(c, b)`.
    pub fn convolve(&self, h: &Self) -> Result<Self> {
        self.same_depth(h)?;
        let mut by_range: BTreeMap<&Word, Vec<(&Word, &T)>> = BTreeMap::new();
        for (a, y) in &h.values {
            by_range.entry(&a.0).or_default().push((&a.1, y));
        }
        let mut out = GroupoidFunction::zero(self.depth);
        for (a, x) in &self.values {
            if let Some(row) = by_range.get(&a.1) {
                for (b, y) in row {
                    out.accumulate(Arrow(a.0.clone(), (*b).clone()), x.clone() * (*y).clone());
                }
            }
        }
        Ok(out)
    }

    /// `f*(a, b) = conj f(b, a)`.
    pub fn involute(&self) -> Self {
        GroupoidFunction {
            depth: self.depth,
            values: self.values.iter().map(|(a, x)| (a.inverse(), x.conj())).collect(),
        }
    }

    fn same_depth(&self, other: &Self) -> Result<()> {
        if self.depth != other.depth {
            return Err(Error::DepthMismatch {
                expected: self.depth,
                found: other.depth,
            });
        }
        Ok(())
    }
}

/// `Σ c_i χ_{E_i}` over pairwise disjoint G-sets with nonzero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct GSetCombination<T> {
    depth: usize,
    terms: Vec<(GSet, T)>,
}

pub type DyadicFunction = GSetCombination<Dyadic>;

impl<T: Scalar> GSetCombination<T> {
    /// Drops empty sets and zero coefficients; errors on overlap.
    pub fn new(depth: usize, terms: impl IntoIterator<Item = (GSet, T)>) -> Result<Self> {
        let terms: Vec<(GSet, T)> = terms
            .into_iter()
            .filter(|(e, c)| !e.is_empty() && !c.is_zero())
            .collect();
        for (k, (e, _)) in terms.iter().enumerate() {
            if e.depth() != depth {
                return Err(Error::DepthMismatch {
                    expected: depth,
                    found: e.depth(),
                });
            }
            for (l, (f, _)) in terms.iter().enumerate().skip(k + 1) {
                if !e.is_disjoint(f) {
                    return Err(Error::Overlap(k + 1, l + 1));
                }
            }
        }
        Ok(GSetCombination { depth, terms })
    }

    pub fn zero(depth: usize) -> Self {
        GSetCombination {
            depth,
            terms: Vec::new(),
        }
    }

    pub fn indicator(e: &GSet) -> Self {
        GSetCombination::new(e.depth(), [(e.clone(), T::one())]).expect("one term")
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn terms(&self) -> &[(GSet, T)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_function(&self) -> GroupoidFunction<T> {
        let mut f = GroupoidFunction::zero(self.depth);
        for (e, c) in &self.terms {
            for a in e.pairs() {
                f.values.insert(a.clone(), c.clone());
            }
        }
        f
    }

    /// Groups a function's support into G-sets, one coefficient at a time.
    /// Within a coefficient class, arrows are placed greedily in order
    /// into the first set they do not break.
    pub fn from_function(f: &GroupoidFunction<T>) -> Self {
        // (arrows, coefficient, ranges used, sources used)
        type Slot<T> = (Vec<Arrow>, T, BTreeSet<Word>, BTreeSet<Word>);
        let mut terms: Vec<Slot<T>> = Vec::new();
        for (a, x) in f.values() {
            let slot = terms
                .iter_mut()
                .find(|(_, c, r, d)| c == x && !r.contains(&a.0) && !d.contains(&a.1));
            match slot {
                Some((arrows, _, r, d)) => {
                    arrows.push(a.clone());
                    r.insert(a.0.clone());
                    d.insert(a.1.clone());
                }
                None => terms.push((
                    vec![a.clone()],
                    x.clone(),
                    [a.0.clone()].into_iter().collect(),
                    [a.1.clone()].into_iter().collect(),
                )),
            }
        }
        GSetCombination {
            depth: f.depth(),
            terms: terms
                .into_iter()
                .map(|(arrows, c, _, _)| (GSet::new(f.depth(), arrows).expect("injective by construction"), c))
                .collect(),
        }
    }

    /// Equality as functions on the groupoid.
    pub fn same_function(&self, other: &Self) -> bool {
        self.depth == other.depth && self.to_function() == other.to_function()
    }

    pub fn convolve(&self, h: &Self) -> Result<Self> {
        Ok(Self::from_function(&self.to_function().convolve(&h.to_function())?))
    }

    pub fn involute(&self) -> Self {
        GSetCombination {
            depth: self.depth,
            terms: self.terms.iter().map(|(e, c)| (e.inverse(), c.conj())).collect(),
        }
    }
}
