//! Embedding towers of triangular matrix algebras.
//!
//! A [`Tower`] fixes a base size `n_1` and, for every further level, an
//! embedding `M_{n_k} → M_{n_k q_k}`: either the refinement embedding
//! (each entry amplified by an identity block) or the standard embedding
//! (block-diagonal copies). Alternation towers are just heterogeneous
//! level lists. Level `k` carries the upper triangular algebra `T_{n_k}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::relation::{
    enumerate_ideals, ideal_closure, invariant_projections, reflexive_transitive_closure, IdealSet, PairSet,
    ProjectionSet, SupportRelation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingKind {
    Refinement,
    Standard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmbeddingSpec {
    pub kind: EmbeddingKind,
    pub q: usize,
}

impl EmbeddingSpec {
    pub fn new(kind: EmbeddingKind, q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroMultiplicity);
        }
        Ok(EmbeddingSpec { kind, q })
    }

    pub fn refinement(q: usize) -> Self {
        EmbeddingSpec::new(EmbeddingKind::Refinement, q).expect("positive multiplicity")
    }

    pub fn standard(q: usize) -> Self {
        EmbeddingSpec::new(EmbeddingKind::Standard, q).expect("positive multiplicity")
    }

    /// Images of the diagonal index `i` of `M_n`, in summand order `t`.
    pub fn embed_index(&self, n: usize, i: usize) -> Vec<usize> {
        match self.kind {
            EmbeddingKind::Refinement => (1..=self.q).map(|t| (i - 1) * self.q + t).collect(),
            // Block-diagonal copies sit n apart.
            EmbeddingKind::Standard => (0..self.q).map(|t| i + t * n).collect(),
        }
    }
}

/// The `q` matrix units of `M_{nq}` summing to the image of `e_ij`.
pub fn embed_unit(spec: EmbeddingSpec, n: usize, i: usize, j: usize) -> Result<Vec<(usize, usize)>> {
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(Error::IndexOutOfRange { i, j, n });
    }
    Ok(spec.embed_index(n, i).into_iter().zip(spec.embed_index(n, j)).collect())
}

/// Union of the images of every pair.
pub fn embed_pairs(spec: EmbeddingSpec, pairs: &PairSet) -> PairSet {
    let n = pairs.size();
    let mut out = PairSet::empty(n * spec.q);
    for (i, j) in pairs.iter() {
        for (a, b) in embed_unit(spec, n, i, j).expect("pairs are in range") {
            out.insert(a, b);
        }
    }
    out
}

/// Support of the smallest digraph algebra containing the image of `A(P)`.
pub fn lift_support(spec: EmbeddingSpec, p: &SupportRelation) -> SupportRelation {
    reflexive_transitive_closure(&embed_pairs(spec, p.pairs()))
}

/// The ideal of `A(P_next)` generated by the image of `f`.
pub fn lift_ideal(
    spec: EmbeddingSpec,
    p: &SupportRelation,
    f: &IdealSet,
    p_next: &SupportRelation,
) -> Result<IdealSet> {
    if f.parent() != p {
        return Err(Error::LevelMismatch(
            "ideal does not belong to the given support".into(),
        ));
    }
    if p_next.size() != p.size() * spec.q {
        return Err(Error::SizeMismatch {
            expected: p.size() * spec.q,
            found: p_next.size(),
        });
    }
    if let Some((i, j)) = lift_support(spec, p).pairs().first_outside(p_next.pairs()) {
        return Err(Error::NotContained(i, j));
    }
    ideal_closure(p_next, &embed_pairs(spec, f.pairs()))
}

/// Units `(i, j)` of `P` whose whole image lies in `upper`: the level-`n`
/// part of an ideal given at level `nq`.
pub fn pullback(spec: EmbeddingSpec, p: &SupportRelation, upper: &PairSet) -> PairSet {
    let n = p.size();
    let mut out = PairSet::empty(n);
    for (i, j) in p.pairs().iter() {
        let images = embed_unit(spec, n, i, j).expect("pairs are in range");
        if images.iter().all(|&(a, b)| upper.contains(a, b)) {
            out.insert(i, j);
        }
    }
    out
}

/// `P ∪ Pᵀ` is everything and `P ∩ Pᵀ` is the diagonal: `A(P)` is maximal
/// triangular in `M_n`.
pub fn is_strongly_maximal_level(p: &SupportRelation) -> bool {
    let pairs = p.pairs();
    let t = pairs.transpose();
    pairs.union(&t) == PairSet::full(p.size()) && pairs.intersection(&t) == PairSet::identity(p.size())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tower {
    pub base: usize,
    pub levels: Vec<EmbeddingSpec>,
}

impl Tower {
    pub fn new(base: usize, levels: Vec<EmbeddingSpec>) -> Result<Self> {
        if base == 0 {
            return Err(Error::ZeroSize);
        }
        if levels.iter().any(|l| l.q == 0) {
            return Err(Error::ZeroMultiplicity);
        }
        Ok(Tower { base, levels })
    }

    /// `2^∞`-style tower with `count` embeddings of one kind.
    pub fn uniform(base: usize, kind: EmbeddingKind, q: usize, count: usize) -> Result<Self> {
        Tower::new(base, vec![EmbeddingSpec::new(kind, q)?; count])
    }

    /// Number of algebra levels (one more than the number of embeddings).
    pub fn height(&self) -> usize {
        self.levels.len() + 1
    }

    /// `n_k` for `1 ≤ k ≤ height`.
    pub fn size(&self, k: usize) -> usize {
        self.base * self.levels[..k - 1].iter().map(|l| l.q).product::<usize>()
    }

    /// Alphabet sizes of the words indexing level matrix units.
    pub fn alphabets(&self) -> Vec<usize> {
        std::iter::once(self.base)
            .chain(self.levels.iter().map(|l| l.q))
            .collect()
    }

    pub fn kinds(&self) -> Vec<EmbeddingKind> {
        self.levels.iter().map(|l| l.kind).collect()
    }

    pub fn level_support(&self, k: usize) -> SupportRelation {
        SupportRelation::upper_triangular(self.size(k))
    }

    /// Errors unless levels `1..=depth` exist and fit the limits.
    pub fn check_depth(&self, depth: usize, limits: &Limits) -> Result<()> {
        if depth == 0 || depth > self.height() {
            return Err(Error::LevelMismatch(format!(
                "depth {depth} outside 1..={}",
                self.height()
            )));
        }
        if depth > limits.max_tower_depth {
            return Err(Error::BoundExceeded {
                what: "tower depth",
                value: depth,
                limit: limits.max_tower_depth,
            });
        }
        let top = self.size(depth);
        if top > limits.max_tower_size {
            return Err(Error::BoundExceeded {
                what: "tower size",
                value: top,
                limit: limits.max_tower_size,
            });
        }
        Ok(())
    }

    /// Images at level `m` of index `i` of level `k`, in summand order.
    pub fn embed_index_chain(&self, k: usize, m: usize, i: usize) -> Vec<usize> {
        let mut images = vec![i];
        for level in k..m {
            let spec = self.levels[level - 1];
            let n = self.size(level);
            images = images.into_iter().flat_map(|x| spec.embed_index(n, x)).collect();
        }
        images
    }

    /// Images at level `m` of the level-`k` unit `e_ij`.
    pub fn embed_unit_chain(&self, k: usize, m: usize, i: usize, j: usize) -> Vec<(usize, usize)> {
        self.embed_index_chain(k, m, i)
            .into_iter()
            .zip(self.embed_index_chain(k, m, j))
            .collect()
    }

    pub fn embed_pairs_chain(&self, k: usize, m: usize, pairs: &PairSet) -> PairSet {
        let mut out = PairSet::empty(self.size(m));
        for (i, j) in pairs.iter() {
            for (a, b) in self.embed_unit_chain(k, m, i, j) {
                out.insert(a, b);
            }
        }
        out
    }

    /// Level-`k` units of `T_{n_k}` whose image at level `m` lies in `upper`.
    pub fn pullback_chain(&self, k: usize, m: usize, upper: &PairSet) -> PairSet {
        let p = self.level_support(k);
        let mut out = PairSet::empty(p.size());
        for (i, j) in p.pairs().iter() {
            if self
                .embed_unit_chain(k, m, i, j)
                .iter()
                .all(|&(a, b)| upper.contains(a, b))
            {
                out.insert(i, j);
            }
        }
        out
    }

    /// Lifts an ideal of level `k` one level at a time up to level `m`.
    pub fn lift_ideal_chain(&self, k: usize, m: usize, f: &IdealSet) -> Result<IdealSet> {
        let mut current = f.clone();
        for level in k..m {
            current = lift_ideal(
                self.levels[level - 1],
                &self.level_support(level),
                &current,
                &self.level_support(level + 1),
            )?;
        }
        Ok(current)
    }
}

/// Whether `top` (an ideal at level `depth`) is the ideal generated by the
/// images of its intersections with every level `1..=depth`.
pub fn inductivity_check(tower: &Tower, top: &IdealSet, depth: usize) -> Result<bool> {
    Ok(inductivity_report(tower, top, depth)?.inductive)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductivityReport {
    /// `top ∩ A_k` for each level `k = 1..=depth`, as level-`k` pairs.
    pub pullbacks: Vec<PairSet>,
    pub regenerated: PairSet,
    pub inductive: bool,
}

pub fn inductivity_report(tower: &Tower, top: &IdealSet, depth: usize) -> Result<InductivityReport> {
    if depth == 0 || depth > tower.height() {
        return Err(Error::LevelMismatch(format!(
            "depth {depth} outside 1..={}",
            tower.height()
        )));
    }
    if top.parent() != &tower.level_support(depth) {
        return Err(Error::LevelMismatch(format!(
            "ideal of size {} does not live at level {depth} (size {})",
            top.parent().size(),
            tower.size(depth)
        )));
    }
    let mut pullbacks = Vec::with_capacity(depth);
    let mut union = PairSet::empty(tower.size(depth));
    for k in 1..=depth {
        let pb = tower.pullback_chain(k, depth, top.pairs());
        union = union.union(&tower.embed_pairs_chain(k, depth, &pb));
        pullbacks.push(pb);
    }
    let regenerated = ideal_closure(top.parent(), &union)?.pairs().clone();
    let inductive = &regenerated == top.pairs();
    Ok(InductivityReport {
        pullbacks,
        regenerated,
        inductive,
    })
}

/// For each level `k ≤ depth`, the invariant projections of `T_{n_k}` whose
/// images stay invariant at every level up to `depth`.
pub fn persistent_projections(tower: &Tower, depth: usize) -> Result<Vec<Vec<ProjectionSet>>> {
    persistent_projections_with(tower, depth, &Limits::default())
}

pub fn persistent_projections_with(tower: &Tower, depth: usize, limits: &Limits) -> Result<Vec<Vec<ProjectionSet>>> {
    tower.check_depth(depth, limits)?;
    let mut out = Vec::with_capacity(depth);
    for k in 1..=depth {
        let lattice = invariant_projections(&tower.level_support(k))?;
        let survivors = lattice
            .into_iter()
            .filter(|s| {
                (k + 1..=depth).all(|m| {
                    let image = ProjectionSet::new(
                        tower.size(m),
                        s.members().iter().flat_map(|&i| tower.embed_index_chain(k, m, i)),
                    )
                    .expect("images are in range");
                    image.is_invariant_for(&tower.level_support(m))
                })
            })
            .collect();
        out.push(survivors);
    }
    Ok(out)
}

/// An ideal whose lift to the next level, pulled back, is strictly larger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnlargementWitness {
    pub spec: EmbeddingSpec,
    pub lower: SupportRelation,
    pub upper: SupportRelation,
    pub ideal: IdealSet,
    pub pulled_back: PairSet,
}

/// Seeded search for an ideal of `T_n` (n ∈ {2, 3}) that grows under
/// lift-then-pullback when `T_n` embeds with `kind` into a digraph algebra
/// obtained from the lifted support by adjoining a few random positions.
///
/// With triangular upper levels no witness exists for either kind; extra
/// positions that close into cycles are what produce one.
pub fn search_enlargement_witness(kind: EmbeddingKind, seed: u64, trials: usize) -> Option<EnlargementWitness> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let n = rng.gen_range(2..=3);
        let q = rng.gen_range(2..=3);
        let spec = EmbeddingSpec::new(kind, q).expect("q ≥ 2");
        let lower = SupportRelation::upper_triangular(n);
        let mut upper = lift_support(spec, &lower).into_pairs();
        for _ in 0..rng.gen_range(1..=3) {
            upper.insert(rng.gen_range(1..=n * q), rng.gen_range(1..=n * q));
        }
        let upper = reflexive_transitive_closure(&upper);
        if let Some(w) = enlargement_in(spec, &lower, &upper) {
            return Some(w);
        }
    }
    None
}

/// First ideal of `lower` (in listing order) that grows under
/// lift-then-pullback into `upper`.
pub fn enlargement_in(
    spec: EmbeddingSpec,
    lower: &SupportRelation,
    upper: &SupportRelation,
) -> Option<EnlargementWitness> {
    for ideal in enumerate_ideals(lower).ok()? {
        let lifted = lift_ideal(spec, lower, &ideal, upper).ok()?;
        let pulled_back = pullback(spec, lower, lifted.pairs());
        if &pulled_back != ideal.pairs() {
            return Some(EnlargementWitness {
                spec,
                lower: lower.clone(),
                upper: upper.clone(),
                ideal,
                pulled_back,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refinement_unit_matches_amplified_block() {
        let got = embed_unit(EmbeddingSpec::refinement(6), 2, 1, 2).unwrap();
        let want: Vec<_> = (1..=6).map(|t| (t, 6 + t)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn standard_unit_matches_block_diagonal() {
        let got = embed_unit(EmbeddingSpec::standard(6), 2, 1, 2).unwrap();
        assert_eq!(got, vec![(1, 2), (3, 4), (5, 6), (7, 8), (9, 10), (11, 12)]);
    }

    #[test]
    fn multiplicity_one_is_identity() {
        for spec in [EmbeddingSpec::refinement(1), EmbeddingSpec::standard(1)] {
            assert_eq!(embed_unit(spec, 4, 2, 3).unwrap(), vec![(2, 3)]);
        }
        assert_eq!(
            EmbeddingSpec::new(EmbeddingKind::Standard, 0),
            Err(Error::ZeroMultiplicity)
        );
    }

    #[test]
    fn embed_unit_range_check() {
        assert!(matches!(
            embed_unit(EmbeddingSpec::standard(2), 2, 3, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn lifts_of_identity_stay_diagonal() {
        for spec in [EmbeddingSpec::refinement(3), EmbeddingSpec::standard(3)] {
            assert_eq!(
                lift_support(spec, &SupportRelation::identity(2)),
                SupportRelation::identity(6)
            );
        }
    }

    #[test]
    fn lifted_triangular_support_stays_triangular() {
        for spec in [EmbeddingSpec::refinement(2), EmbeddingSpec::standard(2)] {
            let lifted = lift_support(spec, &SupportRelation::upper_triangular(2));
            assert!(lifted.pairs().is_subset(&PairSet::upper_triangular(4)));
        }
    }

    #[test]
    fn lift_single_diagonal_seed() {
        let spec = EmbeddingSpec::refinement(2);
        let t2 = SupportRelation::upper_triangular(2);
        let t4 = SupportRelation::upper_triangular(4);
        let f = ideal_closure(&t2, &PairSet::from_pairs(2, [(1, 1)]).unwrap()).unwrap();
        let lifted = lift_ideal(spec, &t2, &f, &t4).unwrap();
        let expected = ideal_closure(&t4, &PairSet::from_pairs(4, [(1, 1), (2, 2), (1, 2)]).unwrap()).unwrap();
        assert_eq!(lifted, expected);
        let empty = IdealSet::empty(t2.clone());
        assert!(lift_ideal(spec, &t2, &empty, &t4).unwrap().is_empty());
    }

    #[test]
    fn lift_ideal_rejects_small_target() {
        let t2 = SupportRelation::upper_triangular(2);
        let empty = IdealSet::empty(t2.clone());
        let target = SupportRelation::identity(4);
        assert!(matches!(
            lift_ideal(EmbeddingSpec::standard(2), &t2, &empty, &target),
            Err(Error::NotContained(..))
        ));
    }

    #[test]
    fn tower_sizes_and_alphabets() {
        let t = Tower::new(2, vec![EmbeddingSpec::refinement(3), EmbeddingSpec::standard(2)]).unwrap();
        assert_eq!((t.size(1), t.size(2), t.size(3)), (2, 6, 12));
        assert_eq!(t.alphabets(), vec![2, 3, 2]);
        assert_eq!(t.embed_index_chain(1, 3, 2), vec![4, 10, 5, 11, 6, 12]);
        assert!(t.check_depth(4, &Limits::default()).is_err());
    }

    #[test]
    fn strong_maximality() {
        assert!(is_strongly_maximal_level(&SupportRelation::upper_triangular(5)));
        assert!(!is_strongly_maximal_level(&SupportRelation::identity(3)));
        assert!(is_strongly_maximal_level(&SupportRelation::identity(1)));
    }

    #[test]
    fn depth_one_keeps_everything() {
        let t = Tower::uniform(3, EmbeddingKind::Standard, 2, 2).unwrap();
        let levels = persistent_projections(&t, 1).unwrap();
        assert_eq!(levels.len(), 1);
        assert_eq!(levels[0], invariant_projections(&t.level_support(1)).unwrap());
    }

    #[test]
    fn inductivity_trivial_cases() {
        let t = Tower::uniform(2, EmbeddingKind::Refinement, 2, 3).unwrap();
        let empty = IdealSet::empty(t.level_support(4));
        assert!(inductivity_check(&t, &empty, 4).unwrap());
        let wrong = IdealSet::empty(t.level_support(2));
        assert!(matches!(inductivity_check(&t, &wrong, 4), Err(Error::LevelMismatch(_))));
    }
}
