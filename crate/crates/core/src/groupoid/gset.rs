//! The truncated tail-equivalence groupoid and its G-sets.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::limits::Limits;

use super::words::{Alphabets, Word};

/// A groupoid element `(u, v)`: range unit `(u, u)`, source unit `(v, v)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow(pub Word, pub Word);

impl Arrow {
    pub fn new(u: impl Into<Word>, v: impl Into<Word>) -> Self {
        Arrow(u.into(), v.into())
    }

    pub fn unit(u: Word) -> Self {
        Arrow(u.clone(), u)
    }

    pub fn range(&self) -> Arrow {
        Arrow::unit(self.0.clone())
    }

    pub fn source(&self) -> Arrow {
        Arrow::unit(self.1.clone())
    }

    pub fn inverse(&self) -> Arrow {
        Arrow(self.1.clone(), self.0.clone())
    }

    pub fn is_unit(&self) -> bool {
        self.0 == self.1
    }

    pub fn depth(&self) -> usize {
        self.0.depth()
    }

    /// `(u, v)(v, w) = (u, w)`; `None` when the middle words differ.
    pub fn compose(&self, other: &Arrow) -> Option<Arrow> {
        groupoid_compose(self, other)
    }
}

impl fmt::Debug for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?} {:?}]", self.0, self.1)
    }
}

pub fn groupoid_compose(a: &Arrow, b: &Arrow) -> Option<Arrow> {
    (a.1 == b.0).then(|| Arrow(a.0.clone(), b.1.clone()))
}

/// A set of arrows on which range and source are both injective.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GSet {
    depth: usize,
    pairs: BTreeSet<Arrow>,
}

impl GSet {
    pub fn new(depth: usize, pairs: impl IntoIterator<Item = Arrow>) -> Result<Self> {
        let pairs: BTreeSet<Arrow> = pairs.into_iter().collect();
        let mut ranges = BTreeSet::new();
        let mut sources = BTreeSet::new();
        for a in &pairs {
            for w in [&a.0, &a.1] {
                if w.depth() != depth {
                    return Err(Error::DepthMismatch {
                        expected: depth,
                        found: w.depth(),
                    });
                }
            }
            if !ranges.insert(a.0.clone()) {
                return Err(Error::NotAGSet(format!("range {:?} repeated", a.0)));
            }
            if !sources.insert(a.1.clone()) {
                return Err(Error::NotAGSet(format!("source {:?} repeated", a.1)));
            }
        }
        Ok(GSet { depth, pairs })
    }

    pub fn empty(depth: usize) -> Self {
        GSet {
            depth,
            pairs: BTreeSet::new(),
        }
    }

    pub fn singleton(a: Arrow) -> Self {
        let depth = a.depth();
        GSet::new(depth, [a]).expect("a single arrow is a G-set")
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn pairs(&self) -> &BTreeSet<Arrow> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: &Arrow) -> bool {
        self.pairs.contains(a)
    }

    pub fn range_words(&self) -> BTreeSet<Word> {
        self.pairs.iter().map(|a| a.0.clone()).collect()
    }

    pub fn source_words(&self) -> BTreeSet<Word> {
        self.pairs.iter().map(|a| a.1.clone()).collect()
    }

    /// `r(E)` as a G-set of units.
    pub fn range_set(&self) -> GSet {
        self.units_of(self.range_words())
    }

    /// `d(E)` as a G-set of units.
    pub fn source_set(&self) -> GSet {
        self.units_of(self.source_words())
    }

    fn units_of(&self, words: BTreeSet<Word>) -> GSet {
        GSet {
            depth: self.depth,
            pairs: words.into_iter().map(Arrow::unit).collect(),
        }
    }

    pub fn inverse(&self) -> GSet {
        GSet {
            depth: self.depth,
            pairs: self.pairs.iter().map(Arrow::inverse).collect(),
        }
    }

    /// `EF = {ab : a ∈ E, b ∈ F composable}`; again a G-set.
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        self.same_depth(other)?;
        let pairs = self
            .pairs
            .iter()
            .filter_map(|a| {
                other
                    .pairs
                    .range(Arrow(a.1.clone(), Word::new(Vec::new()))..)
                    .take_while(|b| b.0 == a.1)
                    .find_map(|b| a.compose(b))
            })
            .collect();
        Ok(GSet {
            depth: self.depth,
            pairs,
        })
    }

    pub fn difference(&self, other: &GSet) -> Result<GSet> {
        self.same_depth(other)?;
        Ok(GSet {
            depth: self.depth,
            pairs: self.pairs.difference(&other.pairs).cloned().collect(),
        })
    }

    /// `E` minus any arrows in `pairs`; a subset of a G-set is a G-set.
    pub fn without(&self, pairs: &BTreeSet<Arrow>) -> GSet {
        GSet {
            depth: self.depth,
            pairs: self.pairs.difference(pairs).cloned().collect(),
        }
    }

    pub fn is_disjoint(&self, other: &GSet) -> bool {
        self.pairs.is_disjoint(&other.pairs)
    }

    pub fn is_subset_of(&self, pairs: &BTreeSet<Arrow>) -> bool {
        self.pairs.is_subset(pairs)
    }

    /// Image at a finer depth: `{(u·w, v·w)}` over all tails `w`.
    pub fn refine(&self, alphabets: &Alphabets, depth: usize) -> Result<GSet> {
        if depth < self.depth || depth > alphabets.max_depth() {
            return Err(Error::DepthMismatch {
                expected: self.depth,
                found: depth,
            });
        }
        let tails = alphabets.range(self.depth, depth).words(depth - self.depth);
        let pairs = self
            .pairs
            .iter()
            .flat_map(|a| tails.iter().map(move |w| Arrow(a.0.concat(w), a.1.concat(w))))
            .collect();
        Ok(GSet { depth, pairs })
    }

    /// Arrows whose range lies in `ranges` and source in `sources`.
    pub fn restrict(&self, ranges: &BTreeSet<Word>, sources: &BTreeSet<Word>) -> GSet {
        GSet {
            depth: self.depth,
            pairs: self
                .pairs
                .iter()
                .filter(|a| ranges.contains(&a.0) && sources.contains(&a.1))
                .cloned()
                .collect(),
        }
    }

    fn same_depth(&self, other: &GSet) -> Result<()> {
        if self.depth != other.depth {
            return Err(Error::DepthMismatch {
                expected: self.depth,
                found: other.depth,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.pairs).finish()
    }
}

/// The tail-equivalence groupoid truncated at a depth: every pair of
/// depth-`k` words, with the prefix G-sets `E_{i,j}` as basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailGroupoid {
    alphabets: Alphabets,
    depth: usize,
}

impl TailGroupoid {
    pub fn new(alphabets: &Alphabets, depth: usize, limits: &Limits) -> Result<Self> {
        alphabets.check_depth(depth, limits)?;
        Ok(TailGroupoid {
            alphabets: alphabets.range(0, depth),
            depth,
        })
    }

    pub fn uniform(r: usize, depth: usize) -> Result<Self> {
        TailGroupoid::new(&Alphabets::uniform(r, depth), depth, &Limits::default())
    }

    pub fn alphabets(&self) -> &Alphabets {
        &self.alphabets
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn words(&self) -> Vec<Word> {
        self.alphabets.words(self.depth)
    }

    pub fn units(&self) -> BTreeSet<Arrow> {
        self.words().into_iter().map(Arrow::unit).collect()
    }

    /// All arrows, in row-major lexicographic order.
    pub fn arrows(&self) -> Vec<Arrow> {
        let words = self.words();
        words
            .iter()
            .flat_map(|u| words.iter().map(move |v| Arrow(u.clone(), v.clone())))
            .collect()
    }

    pub fn validate(&self, a: &Arrow) -> Result<()> {
        for w in [&a.0, &a.1] {
            if w.depth() != self.depth {
                return Err(Error::DepthMismatch {
                    expected: self.depth,
                    found: w.depth(),
                });
            }
            self.alphabets.validate(w)?;
        }
        Ok(())
    }

    pub fn validate_gset(&self, e: &GSet) -> Result<()> {
        e.pairs().iter().try_for_each(|a| self.validate(a))
    }

    /// `E_{i,j} = {(i·w, j·w)}` for prefixes of a common length.
    pub fn basis_gset(&self, i: &Word, j: &Word) -> Result<GSet> {
        if i.depth() != j.depth() {
            return Err(Error::DepthMismatch {
                expected: i.depth(),
                found: j.depth(),
            });
        }
        self.alphabets.validate(i)?;
        self.alphabets.validate(j)?;
        GSet::singleton(Arrow(i.clone(), j.clone())).refine(&self.alphabets, self.depth)
    }

    /// Prefix pairs `(i, j)` with `|i| = |j| = len`, row-major.
    pub fn prefix_pairs(&self, len: usize) -> Vec<(Word, Word)> {
        let words = self.alphabets.words(len);
        words
            .iter()
            .flat_map(|i| words.iter().map(move |j| (i.clone(), j.clone())))
            .collect()
    }

    /// The children `(i·m, j·m)` whose basis sets partition `E_{i,j}`.
    pub fn split(&self, i: &Word, j: &Word) -> Result<Vec<(Word, Word)>> {
        let len = i.depth();
        if len >= self.depth {
            return Err(Error::DepthMismatch {
                expected: self.depth,
                found: len + 1,
            });
        }
        let r = self.alphabets.sizes()[len];
        Ok((1..=r)
            .map(|m| (i.concat(&Word::new(vec![m])), j.concat(&Word::new(vec![m]))))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a<const N: usize>(u: [usize; N], v: [usize; N]) -> Arrow {
        Arrow::new(u, v)
    }

    #[test]
    fn composition() {
        let x = a([1, 2], [2, 1]);
        assert_eq!(x.compose(&a([2, 1], [2, 2])), Some(a([1, 2], [2, 2])));
        assert_eq!(x.compose(&a([1, 1], [2, 2])), None);
        assert_eq!(x.range(), a([1, 2], [1, 2]));
        assert_eq!(x.source(), a([2, 1], [2, 1]));
        assert_eq!(x.inverse(), a([2, 1], [1, 2]));
    }

    #[test]
    fn gset_property_enforced() {
        assert!(matches!(
            GSet::new(1, [a([1], [1]), a([1], [2])]),
            Err(Error::NotAGSet(_))
        ));
        assert!(matches!(
            GSet::new(1, [a([1], [2]), a([2], [2])]),
            Err(Error::NotAGSet(_))
        ));
        assert!(matches!(GSet::new(2, [a([1], [2])]), Err(Error::DepthMismatch { .. })));
    }

    #[test]
    fn depth_one_groupoid() {
        let g = TailGroupoid::uniform(2, 1).unwrap();
        assert_eq!(g.arrows().len(), 4);
        assert_eq!(g.units().len(), 2);
    }

    #[test]
    fn basis_set_example() {
        let g = TailGroupoid::uniform(2, 3).unwrap();
        let e = g.basis_gset(&Word::from([1]), &Word::from([2])).unwrap();
        let mut expected = BTreeSet::new();
        for x in 1..=2 {
            for y in 1..=2 {
                expected.insert(a([1, x, y], [2, x, y]));
            }
        }
        assert_eq!(e.pairs(), &expected);
    }

    #[test]
    fn split_partitions_basis_set() {
        let g = TailGroupoid::new(&Alphabets::new(vec![2, 3, 2]).unwrap(), 3, &Limits::default()).unwrap();
        let (i, j) = (Word::from([1]), Word::from([2]));
        let whole = g.basis_gset(&i, &j).unwrap();
        let children: Vec<GSet> = g
            .split(&i, &j)
            .unwrap()
            .iter()
            .map(|(x, y)| g.basis_gset(x, y).unwrap())
            .collect();
        assert_eq!(children.len(), 3);
        let mut union = BTreeSet::new();
        for (k, c) in children.iter().enumerate() {
            for d in &children[k + 1..] {
                assert!(c.is_disjoint(d));
            }
            union.extend(c.pairs().iter().cloned());
        }
        assert_eq!(&union, whole.pairs());
    }

    #[test]
    fn gset_products() {
        let g = TailGroupoid::uniform(2, 2).unwrap();
        let e = g.basis_gset(&Word::from([1]), &Word::from([2])).unwrap();
        assert_eq!(e.product(&e.inverse()).unwrap(), e.range_set());
        assert_eq!(e.inverse().product(&e).unwrap(), e.source_set());
        assert!(e.product(&e).unwrap().is_empty());
    }
}
