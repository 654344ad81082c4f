//! Relations on the truncated groupoid: partial orders and ideal sets.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::relation::{PairSet, SupportRelation};

use super::gset::{Arrow, TailGroupoid};
use super::words::{Comparator, Word};

/// A set of arrows of a truncated groupoid. Orders, ideal sets and
/// arbitrary candidates share this type; [`check_partial_order`] says
/// which axioms hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordRelation {
    groupoid: TailGroupoid,
    pairs: BTreeSet<Arrow>,
}

impl WordRelation {
    pub fn new(groupoid: &TailGroupoid, pairs: impl IntoIterator<Item = Arrow>) -> Result<Self> {
        let pairs: BTreeSet<Arrow> = pairs.into_iter().collect();
        for a in &pairs {
            groupoid.validate(a)?;
        }
        Ok(WordRelation {
            groupoid: groupoid.clone(),
            pairs,
        })
    }

    pub fn units(groupoid: &TailGroupoid) -> Self {
        WordRelation {
            groupoid: groupoid.clone(),
            pairs: groupoid.units(),
        }
    }

    pub fn full(groupoid: &TailGroupoid) -> Self {
        WordRelation {
            groupoid: groupoid.clone(),
            pairs: groupoid.arrows().into_iter().collect(),
        }
    }

    pub fn groupoid(&self) -> &TailGroupoid {
        &self.groupoid
    }

    pub fn depth(&self) -> usize {
        self.groupoid.depth()
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

    /// Carry the relation to `{1..N}` through a word numbering.
    pub fn to_pair_set(&self, numbering: &Comparator) -> PairSet {
        let alphabets = self.groupoid.alphabets();
        let n = alphabets.word_count(self.depth());
        PairSet::from_pairs(
            n,
            self.pairs
                .iter()
                .map(|a| (numbering.index(&a.0, alphabets), numbering.index(&a.1, alphabets))),
        )
        .expect("numbering is a bijection onto 1..N")
    }

    pub fn from_pair_set(groupoid: &TailGroupoid, numbering: &Comparator, pairs: &PairSet) -> Result<Self> {
        let words = index_table(groupoid, numbering);
        if pairs.size() != words.len() {
            return Err(Error::SizeMismatch {
                expected: words.len(),
                found: pairs.size(),
            });
        }
        Ok(WordRelation {
            groupoid: groupoid.clone(),
            pairs: pairs
                .iter()
                .map(|(i, j)| Arrow(words[i - 1].clone(), words[j - 1].clone()))
                .collect(),
        })
    }
}

/// Words listed by their position in a numbering.
pub fn index_table(groupoid: &TailGroupoid, numbering: &Comparator) -> Vec<Word> {
    let alphabets = groupoid.alphabets();
    let mut words = groupoid.words();
    words.sort_by_key(|w| numbering.index(w, alphabets));
    words
}

/// `{(u, v) : u ≤ v}` for the comparator at the groupoid's depth.
pub fn order_from_comparator(groupoid: &TailGroupoid, comparator: &Comparator) -> WordRelation {
    let alphabets = groupoid.alphabets();
    let pairs = groupoid
        .arrows()
        .into_iter()
        .filter(|a| comparator.leq(&a.0, &a.1, alphabets).expect("equal depths"))
        .collect();
    let p = WordRelation {
        groupoid: groupoid.clone(),
        pairs,
    };
    let report = check_partial_order(&p);
    assert!(
        report.is_partial && report.is_total,
        "comparator must give a total order"
    );
    p
}

/// The arrows `(i·w, j·w)` with `i ≤ j` for prefixes of length `len`.
pub fn order_layer(groupoid: &TailGroupoid, comparator: &Comparator, len: usize) -> Result<WordRelation> {
    let depth = groupoid.depth();
    if len == 0 || len > depth {
        return Err(Error::DepthMismatch {
            expected: depth,
            found: len,
        });
    }
    let prefix_alphabets = groupoid.alphabets().range(0, len);
    let mut pairs = BTreeSet::new();
    for (i, j) in groupoid.prefix_pairs(len) {
        if comparator.leq(&i, &j, &prefix_alphabets)? {
            pairs.extend(groupoid.basis_gset(&i, &j)?.pairs().iter().cloned());
        }
    }
    Ok(WordRelation {
        groupoid: groupoid.clone(),
        pairs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderReport {
    pub is_partial: bool,
    pub is_total: bool,
    pub is_equivalence: bool,
}

/// Partial order: `P∘P ⊆ P` and `P ∩ P⁻¹ = G⁰`. Total: also
/// `P ∪ P⁻¹ = G`. Equivalence: contains `G⁰`, `P∘P ⊆ P` and `P = P⁻¹`.
pub fn check_partial_order(p: &WordRelation) -> OrderReport {
    let numbering = Comparator::Lex;
    let set = p.to_pair_set(&numbering);
    let n = set.size();
    let units = PairSet::identity(n);
    let inverse = set.transpose();
    let closed = set.compose(&set).expect("same size").is_subset(&set);
    let is_partial = closed && set.intersection(&inverse) == units;
    OrderReport {
        is_partial,
        is_total: is_partial && set.union(&inverse) == PairSet::full(n),
        is_equivalence: units.is_subset(&set) && closed && set == inverse,
    }
}

/// `F ⊆ P` is required; then evaluates `P∘F∘P ⊆ F`.
pub fn ideal_set_check(p: &WordRelation, f: &WordRelation) -> Result<bool> {
    if p.groupoid != f.groupoid {
        return Err(Error::DepthMismatch {
            expected: p.depth(),
            found: f.depth(),
        });
    }
    if let Some(a) = f.pairs.difference(&p.pairs).next() {
        let alphabets = p.groupoid.alphabets();
        return Err(Error::NotContained(
            Comparator::Lex.index(&a.0, alphabets),
            Comparator::Lex.index(&a.1, alphabets),
        ));
    }
    let numbering = Comparator::Lex;
    let ps = p.to_pair_set(&numbering);
    let fs = f.to_pair_set(&numbering);
    let absorbed = ps.compose(&fs)?.compose(&ps)?;
    Ok(absorbed.is_subset(&fs))
}

/// Ideals are determined by their ideal sets, so at finite depth this is
/// equality of the sets.
pub fn spectrum_determines(f1: &WordRelation, f2: &WordRelation) -> bool {
    f1 == f2
}

/// `P` as a support relation on `{1..N}` in the comparator's numbering.
pub fn order_support(groupoid: &TailGroupoid, comparator: &Comparator) -> Result<SupportRelation> {
    SupportRelation::new(order_from_comparator(groupoid, comparator).to_pair_set(comparator))
}
