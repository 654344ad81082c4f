//! Support relations of digraph algebras and their ideal sets.
//!
//! A digraph algebra `A(P) ⊆ M_n` is determined by the set `P` of matrix
//! positions it may occupy; two-sided ideals of `A(P)` are determined by
//! subsets `F ⊆ P` closed under absorption from both sides. Everything here
//! works on those pair sets directly, stored as dense bit matrices.
//!
//! Indices are 1-based in every public signature.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::limits::Limits;

const WORD: usize = 64;

/// A set of index pairs `(i, j)` with `1 ≤ i, j ≤ n`, stored row-major as bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairSet {
    n: usize,
    row_words: usize,
    bits: Vec<u64>,
}

impl PairSet {
    /// The empty pair set on `{1..n}`.
    ///
    /// Panics if `n == 0`.
    pub fn empty(n: usize) -> Self {
        assert!(n > 0, "pair sets need a positive size");
        let row_words = n.div_ceil(WORD);
        PairSet {
            n,
            row_words,
            bits: vec![0; n * row_words],
        }
    }

    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let mut set = PairSet::empty(n);
        for (i, j) in pairs {
            set.try_insert(i, j)?;
        }
        Ok(set)
    }

    pub fn identity(n: usize) -> Self {
        let mut set = PairSet::empty(n);
        for i in 1..=n {
            set.insert(i, i);
        }
        set
    }

    pub fn full(n: usize) -> Self {
        let mut set = PairSet::empty(n);
        for i in 1..=n {
            for j in 1..=n {
                set.insert(i, j);
            }
        }
        set
    }

    /// Positions of the upper triangular algebra `T_n`.
    pub fn upper_triangular(n: usize) -> Self {
        let mut set = PairSet::empty(n);
        for i in 1..=n {
            for j in i..=n {
                set.insert(i, j);
            }
        }
        set
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> (usize, u64) {
        let row = (i - 1) * self.row_words;
        let col = j - 1;
        (row + col / WORD, 1u64 << (col % WORD))
    }

    #[inline]
    fn in_range(&self, i: usize, j: usize) -> bool {
        (1..=self.n).contains(&i) && (1..=self.n).contains(&j)
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        if !self.in_range(i, j) {
            return false;
        }
        let (w, m) = self.slot(i, j);
        self.bits[w] & m != 0
    }

    /// Panics on out-of-range indices; see [`PairSet::try_insert`].
    pub fn insert(&mut self, i: usize, j: usize) {
        assert!(self.in_range(i, j), "pair ({i}, {j}) out of range for size {}", self.n);
        let (w, m) = self.slot(i, j);
        self.bits[w] |= m;
    }

    pub fn try_insert(&mut self, i: usize, j: usize) -> Result<()> {
        if !self.in_range(i, j) {
            return Err(Error::IndexOutOfRange { i, j, n: self.n });
        }
        self.insert(i, j);
        Ok(())
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        if self.in_range(i, j) {
            let (w, m) = self.slot(i, j);
            self.bits[w] &= !m;
        }
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Pairs in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n).flat_map(move |i| self.row(i).map(move |j| (i, j)))
    }

    /// Column indices present in row `i`, ascending.
    pub fn row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let words = &self.bits[(i - 1) * self.row_words..i * self.row_words];
        words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * WORD + b + 1)
            })
        })
    }

    /// Row indices present in column `j`, ascending.
    pub fn column(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(move |&i| self.contains(i, j))
    }

    pub fn to_vec(&self) -> Vec<(usize, usize)> {
        self.iter().collect()
    }

    fn check_same_size(&self, other: &PairSet) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &PairSet, f: impl Fn(u64, u64) -> u64) -> PairSet {
        assert_eq!(self.n, other.n, "pair sets of different sizes");
        PairSet {
            n: self.n,
            row_words: self.row_words,
            bits: self.bits.iter().zip(&other.bits).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn union(&self, other: &PairSet) -> PairSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &PairSet) -> PairSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &PairSet) -> PairSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & !b == 0)
    }

    /// First pair of `self` missing from `other`, if any.
    pub fn first_outside(&self, other: &PairSet) -> Option<(usize, usize)> {
        self.iter().find(|&(i, j)| !other.contains(i, j))
    }

    pub fn transpose(&self) -> PairSet {
        let mut out = PairSet::empty(self.n);
        for (i, j) in self.iter() {
            out.insert(j, i);
        }
        out
    }

    fn or_row_into(&self, src: usize, dst: &mut [u64]) {
        let words = &self.bits[(src - 1) * self.row_words..src * self.row_words];
        for (d, s) in dst.iter_mut().zip(words) {
            *d |= s;
        }
    }

    /// Relational composition `{(i, k) : ∃ j, (i, j) ∈ self, (j, k) ∈ other}`.
    pub fn compose(&self, other: &PairSet) -> Result<PairSet> {
        self.check_same_size(other)?;
        let mut out = PairSet::empty(self.n);
        for i in 1..=self.n {
            let mut acc = vec![0u64; self.row_words];
            for j in self.row(i) {
                other.or_row_into(j, &mut acc);
            }
            out.bits[(i - 1) * self.row_words..i * self.row_words].copy_from_slice(&acc);
        }
        Ok(out)
    }

    /// Sort key used for deterministic listings: size, then the pair list.
    pub fn listing_key(&self) -> (usize, Vec<(usize, usize)>) {
        (self.len(), self.to_vec())
    }

    /// Star-pattern rendering: `*` where a pair is present, `0` elsewhere.
    pub fn star_pattern(&self) -> String {
        let mut out = String::new();
        for i in 1..=self.n {
            let row: Vec<&str> = (1..=self.n)
                .map(|j| if self.contains(i, j) { "*" } else { "0" })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairSet(n={}, {:?})", self.n, self.to_vec())
    }
}

/// Relational composition of two pair sets on the same index set.
pub fn compose(r: &PairSet, s: &PairSet) -> Result<PairSet> {
    r.compose(s)
}

/// The support set of a digraph algebra: a reflexive, transitive relation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SupportRelation(PairSet);

impl SupportRelation {
    /// Validates reflexivity and transitivity.
    pub fn new(pairs: PairSet) -> Result<Self> {
        for i in 1..=pairs.size() {
            if !pairs.contains(i, i) {
                return Err(Error::NotReflexive(i));
            }
        }
        for (i, j) in pairs.iter() {
            for k in pairs.row(j) {
                if !pairs.contains(i, k) {
                    return Err(Error::NotTransitive(i, j, k));
                }
            }
        }
        Ok(SupportRelation(pairs))
    }

    pub fn upper_triangular(n: usize) -> Self {
        SupportRelation(PairSet::upper_triangular(n))
    }

    pub fn identity(n: usize) -> Self {
        SupportRelation(PairSet::identity(n))
    }

    pub fn full(n: usize) -> Self {
        SupportRelation(PairSet::full(n))
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    pub fn pairs(&self) -> &PairSet {
        &self.0
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.0.contains(i, j)
    }

    pub fn into_pairs(self) -> PairSet {
        self.0
    }

    /// True iff `P ∩ Pᵀ` is the diagonal.
    pub fn is_antisymmetric(&self) -> bool {
        self.0.iter().all(|(i, j)| i == j || !self.0.contains(j, i))
    }
}

/// Smallest reflexive, transitive relation on `{1..n}` containing `pairs`.
pub fn reflexive_transitive_closure(pairs: &PairSet) -> SupportRelation {
    let n = pairs.size();
    let mut r = pairs.clone();
    for i in 1..=n {
        r.insert(i, i);
    }
    // Warshall, one row-OR per (i, k) hit.
    let rw = r.row_words;
    for k in 1..=n {
        let krow: Vec<u64> = r.bits[(k - 1) * rw..k * rw].to_vec();
        for i in 1..=n {
            if r.contains(i, k) {
                for (d, s) in r.bits[(i - 1) * rw..i * rw].iter_mut().zip(&krow) {
                    *d |= s;
                }
            }
        }
    }
    SupportRelation(r)
}

/// The support of a two-sided ideal of `A(P)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IdealSet {
    parent: SupportRelation,
    pairs: PairSet,
}

impl IdealSet {
    /// Validates containment in the parent and both absorption rules.
    pub fn new(parent: SupportRelation, pairs: PairSet) -> Result<Self> {
        if pairs.size() != parent.size() {
            return Err(Error::SizeMismatch {
                expected: parent.size(),
                found: pairs.size(),
            });
        }
        if let Some((i, j)) = pairs.first_outside(parent.pairs()) {
            return Err(Error::NotContained(i, j));
        }
        let absorbed = parent.pairs().compose(&pairs)?.compose(parent.pairs())?;
        if let Some((i, j)) = absorbed.first_outside(&pairs) {
            return Err(Error::NotAnIdeal(i, j));
        }
        Ok(IdealSet { parent, pairs })
    }

    pub fn empty(parent: SupportRelation) -> Self {
        let n = parent.size();
        IdealSet {
            parent,
            pairs: PairSet::empty(n),
        }
    }

    pub fn parent(&self) -> &SupportRelation {
        &self.parent
    }

    pub fn pairs(&self) -> &PairSet {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// True iff `f` is closed under left and right absorption by `p`.
pub fn is_ideal(p: &SupportRelation, f: &PairSet) -> bool {
    if !f.is_subset(p.pairs()) {
        return false;
    }
    for (i, j) in f.iter() {
        // right absorption: (i,j) ∈ F, (j,k) ∈ P
        if p.pairs().row(j).any(|k| !f.contains(i, k)) {
            return false;
        }
        // left absorption: (h,i) ∈ P, (i,j) ∈ F
        if p.pairs().column(i).any(|h| !f.contains(h, j)) {
            return false;
        }
    }
    true
}

/// Smallest ideal set of `p` containing `seed`.
pub fn ideal_closure(p: &SupportRelation, seed: &PairSet) -> Result<IdealSet> {
    if seed.size() != p.size() {
        return Err(Error::SizeMismatch {
            expected: p.size(),
            found: seed.size(),
        });
    }
    if let Some((i, j)) = seed.first_outside(p.pairs()) {
        return Err(Error::NotContained(i, j));
    }
    let mut current = seed.clone();
    loop {
        let next = p.pairs().compose(&current)?.compose(p.pairs())?.union(&current);
        if next == current {
            break;
        }
        current = next;
    }
    Ok(IdealSet {
        parent: p.clone(),
        pairs: current,
    })
}

/// The ideal generated by an element whose support is `g`; the principality
/// witness is `generated_support(p, g) == f`.
pub fn generated_support(p: &SupportRelation, g: &PairSet) -> Result<IdealSet> {
    ideal_closure(p, g)
}

/// Support of the full-sum generator `Σ_{(i,j) ∈ F} e_ij`.
pub fn full_sum_generator(f: &IdealSet) -> PairSet {
    f.pairs.clone()
}

/// The corners of the L-blocks making up `f`: a minimal generating subset.
///
/// For antisymmetric `P` a pair `(i, k) ∈ F` is a corner iff no `j ≠ i` has
/// `(i, j) ∈ P, (j, k) ∈ F` and no `j ≠ k` has `(i, j) ∈ F, (j, k) ∈ P`.
/// When `P` has cycles, pairs generating each other form classes; only the
/// row-major first member of each minimal class is kept.
pub fn corner_generator(p: &SupportRelation, f: &IdealSet) -> PairSet {
    let pr = p.pairs();
    let fp = f.pairs();
    // (a, b) generates (i, k) iff (i, a) ∈ P and (b, k) ∈ P.
    let generates = |(a, b): (usize, usize), (i, k): (usize, usize)| pr.contains(i, a) && pr.contains(b, k);
    let members = fp.to_vec();
    let mut corners = PairSet::empty(p.size());
    'outer: for &x in &members {
        for &y in &members {
            if y == x || !generates(y, x) {
                continue;
            }
            // strictly below, or an equivalent pair listed earlier
            if !generates(x, y) || y < x {
                continue 'outer;
            }
        }
        corners.insert(x.0, x.1);
    }
    corners
}

/// All ideal sets of `p`, listed by (size, pair list).
pub fn enumerate_ideals(p: &SupportRelation) -> Result<Vec<IdealSet>> {
    enumerate_ideals_bounded(p, Limits::default().max_enumeration_size)
}

/// As [`enumerate_ideals`] with an explicit size guard.
///
/// Small supports (at most 20 pairs) are filtered exhaustively; larger ones
/// are generated as unions of principal single-pair ideals.
pub fn enumerate_ideals_bounded(p: &SupportRelation, bound: usize) -> Result<Vec<IdealSet>> {
    if p.size() > bound {
        return Err(Error::BoundExceeded {
            what: "enumeration size",
            value: p.size(),
            limit: bound,
        });
    }
    if p.pairs().len() <= 20 {
        enumerate_ideals_exhaustive(p)
    } else {
        Ok(enumerate_ideals_by_closure(p))
    }
}

/// Filters every subset of `P`. Refuses supports with more than 20 pairs.
pub fn enumerate_ideals_exhaustive(p: &SupportRelation) -> Result<Vec<IdealSet>> {
    let positions = p.pairs().to_vec();
    if positions.len() > 20 {
        return Err(Error::BoundExceeded {
            what: "support pairs for exhaustive enumeration",
            value: positions.len(),
            limit: 20,
        });
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << positions.len()) {
        let mut f = PairSet::empty(p.size());
        for (bit, &(i, j)) in positions.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                f.insert(i, j);
            }
        }
        if is_ideal(p, &f) {
            out.push(IdealSet {
                parent: p.clone(),
                pairs: f,
            });
        }
    }
    sort_ideals(&mut out);
    Ok(out)
}

/// Every ideal is a union of principal ideals `P∘{(i,j)}∘P`; closes `{∅}`
/// under adjoining them.
pub fn enumerate_ideals_by_closure(p: &SupportRelation) -> Vec<IdealSet> {
    let principals: Vec<PairSet> = p
        .pairs()
        .iter()
        .map(|(i, j)| {
            let seed = PairSet::from_pairs(p.size(), [(i, j)]).expect("pair from P is in range");
            ideal_closure(p, &seed).expect("seed from P").pairs
        })
        .collect();
    let empty = PairSet::empty(p.size());
    let mut seen: HashSet<PairSet> = HashSet::from([empty.clone()]);
    let mut queue = VecDeque::from([empty]);
    while let Some(current) = queue.pop_front() {
        for principal in &principals {
            if principal.is_subset(&current) {
                continue;
            }
            let next = current.union(principal);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<IdealSet> = seen
        .into_iter()
        .map(|pairs| IdealSet {
            parent: p.clone(),
            pairs,
        })
        .collect();
    sort_ideals(&mut out);
    out
}

fn sort_ideals(ideals: &mut [IdealSet]) {
    ideals.sort_by_cached_key(|f| f.pairs.listing_key());
}

/// The diagonal support of a projection `Σ_{i ∈ members} e_ii`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ProjectionSet {
    n: usize,
    members: BTreeSet<usize>,
}

impl ProjectionSet {
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| m == 0 || m > n) {
            return Err(Error::IndexOutOfRange { i: bad, j: bad, n });
        }
        Ok(ProjectionSet { n, members })
    }

    /// `{1..j}`, a member of the nest of `T_n`.
    pub fn initial_segment(n: usize, j: usize) -> Self {
        ProjectionSet {
            n,
            members: (1..=j.min(n)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn union(&self, other: &ProjectionSet) -> ProjectionSet {
        ProjectionSet {
            n: self.n,
            members: self.members.union(&other.members).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &ProjectionSet) -> ProjectionSet {
        ProjectionSet {
            n: self.n,
            members: self.members.intersection(&other.members).copied().collect(),
        }
    }

    /// `ap = pap` for all `a` supported on `P`.
    pub fn is_invariant_for(&self, p: &SupportRelation) -> bool {
        p.pairs()
            .iter()
            .all(|(i, j)| !self.members.contains(&j) || self.members.contains(&i))
    }

    fn listing_key(&self) -> (usize, Vec<usize>) {
        (self.members.len(), self.members.iter().copied().collect())
    }
}

/// The invariant-projection lattice `Lat A(P)`, listed by (size, members).
pub fn invariant_projections(p: &SupportRelation) -> Result<Vec<ProjectionSet>> {
    invariant_projections_bounded(p, Limits::default().max_projections)
}

pub fn invariant_projections_bounded(p: &SupportRelation, limit: usize) -> Result<Vec<ProjectionSet>> {
    let n = p.size();
    // The smallest invariant set containing j is column j of P.
    let principals: Vec<BTreeSet<usize>> = (1..=n).map(|j| p.pairs().column(j).collect()).collect();
    let mut seen: HashSet<BTreeSet<usize>> = HashSet::from([BTreeSet::new()]);
    let mut queue = VecDeque::from([BTreeSet::new()]);
    while let Some(current) = queue.pop_front() {
        for principal in &principals {
            if principal.is_subset(&current) {
                continue;
            }
            let next: BTreeSet<usize> = current.union(principal).copied().collect();
            if seen.insert(next.clone()) {
                if seen.len() > limit {
                    return Err(Error::BoundExceeded {
                        what: "invariant projections",
                        value: seen.len(),
                        limit,
                    });
                }
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<ProjectionSet> = seen.into_iter().map(|members| ProjectionSet { n, members }).collect();
    out.sort_by_cached_key(ProjectionSet::listing_key);
    debug_assert!(is_lattice(&out));
    Ok(out)
}

/// Closed under pairwise union and intersection.
pub fn is_lattice(sets: &[ProjectionSet]) -> bool {
    let all: HashSet<&ProjectionSet> = sets.iter().collect();
    sets.iter().all(|s| {
        sets.iter()
            .all(|t| all.contains(&s.union(t)) && all.contains(&s.intersection(t)))
    })
}
