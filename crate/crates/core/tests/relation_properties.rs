use std::collections::BTreeSet;

use proptest::prelude::*;

use groupoidal::matrix::{default_max_iters, numeric_generated_support};
use groupoidal::relation::{
    corner_generator, enumerate_ideals, enumerate_ideals_by_closure, enumerate_ideals_exhaustive, generated_support,
    ideal_closure, invariant_projections, is_ideal, is_lattice, reflexive_transitive_closure,
};
use groupoidal::{PairSet, RationalMatrix, SupportRelation};

/// Every preorder on `{1..n}`, by filtering all sets of off-diagonal pairs.
fn all_preorders(n: usize) -> Vec<SupportRelation> {
    let off: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    (0u32..1 << off.len())
        .filter_map(|mask| {
            let mut p = PairSet::identity(n);
            for (k, &(i, j)) in off.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    p.insert(i, j);
                }
            }
            SupportRelation::new(p).ok()
        })
        .collect()
}

/// Ideals of `T_n` from nondecreasing `α` with `α(j) ≤ j`:
/// `I[α] = {(i, j) : i ≤ α(j)}`.
fn alpha_ideals(n: usize) -> BTreeSet<Vec<(usize, usize)>> {
    fn extend(n: usize, alpha: &mut Vec<usize>, out: &mut BTreeSet<Vec<(usize, usize)>>) {
        let j = alpha.len() + 1;
        if j > n {
            let pairs = (1..=n)
                .flat_map(|j| (1..=alpha[j - 1]).map(move |i| (i, j)))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            out.insert(pairs);
            return;
        }
        let lo = alpha.last().copied().unwrap_or(0);
        for a in lo..=j {
            alpha.push(a);
            extend(n, alpha, out);
            alpha.pop();
        }
    }
    let mut out = BTreeSet::new();
    extend(n, &mut Vec::new(), &mut out);
    out
}

fn sorted_pairs(p: &PairSet) -> Vec<(usize, usize)> {
    let mut v = p.to_vec();
    v.sort();
    v
}

#[test]
fn triangular_ideals_match_alpha_oracle() {
    let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430];
    for n in 1..=7 {
        let got: BTreeSet<_> = enumerate_ideals(&SupportRelation::upper_triangular(n))
            .unwrap()
            .iter()
            .map(|f| sorted_pairs(f.pairs()))
            .collect();
        let want = alpha_ideals(n);
        assert_eq!(want.len(), catalan[n + 1]);
        assert_eq!(got, want, "T_{n}");
    }
}

#[test]
fn corner_generators_are_minimal_on_every_small_preorder() {
    for n in 1..=4 {
        for p in all_preorders(n) {
            for f in enumerate_ideals(&p).unwrap() {
                let corner = corner_generator(&p, &f);
                assert!(corner.is_subset(f.pairs()));
                assert_eq!(generated_support(&p, &corner).unwrap().pairs(), f.pairs());
                for (i, j) in corner.iter() {
                    let mut smaller = corner.clone();
                    smaller.remove(i, j);
                    assert_ne!(generated_support(&p, &smaller).unwrap().pairs(), f.pairs());
                }
            }
        }
    }
}

#[test]
fn both_enumerations_agree_on_every_small_preorder() {
    for n in 1..=4 {
        for p in all_preorders(n) {
            let a = enumerate_ideals_exhaustive(&p).unwrap();
            let b = enumerate_ideals_by_closure(&p);
            assert_eq!(a, b, "{:?}", p.pairs());
        }
    }
}

#[test]
fn single_seeds_agree_with_exact_matrices_on_every_small_preorder() {
    for n in 1..=3 {
        for p in all_preorders(n) {
            for (i, j) in p.pairs().iter() {
                let seed = PairSet::from_pairs(n, [(i, j)]).unwrap();
                let g = RationalMatrix::generic_from_support(&seed);
                let numeric = numeric_generated_support(&p, &g, default_max_iters(n)).unwrap();
                assert_eq!(&numeric, ideal_closure(&p, &seed).unwrap().pairs());
            }
        }
    }
}

#[test]
fn projections_are_down_sets() {
    for n in 1..=4 {
        for p in all_preorders(n) {
            let got: BTreeSet<Vec<usize>> = invariant_projections(&p)
                .unwrap()
                .iter()
                .map(|s| s.members().iter().copied().collect())
                .collect();
            let want: BTreeSet<Vec<usize>> = (0u32..1 << n)
                .map(|mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect::<Vec<_>>())
                .filter(|s| p.pairs().iter().all(|(i, j)| !s.contains(&j) || s.contains(&i)))
                .collect();
            assert_eq!(got, want);
        }
    }
}

fn preorder(max_n: usize) -> impl Strategy<Value = SupportRelation> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((1..=n, 1..=n), 0..=n * n)
            .prop_map(move |pairs| reflexive_transitive_closure(&PairSet::from_pairs(n, pairs).unwrap()))
    })
}

fn preorder_with_seeds() -> impl Strategy<Value = (SupportRelation, PairSet, PairSet)> {
    preorder(7).prop_flat_map(|p| {
        let pairs = p.pairs().to_vec();
        let n = p.size();
        let pick = proptest::sample::subsequence(pairs.clone(), 0..=pairs.len());
        (Just(p), pick.clone(), pick).prop_map(move |(p, a, b)| {
            let a = PairSet::from_pairs(n, a).unwrap();
            let b = PairSet::from_pairs(n, b).unwrap().union(&a);
            (p, a, b)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_is_a_closure_operator((p, small, large) in preorder_with_seeds()) {
        let cs = ideal_closure(&p, &small).unwrap();
        let cl = ideal_closure(&p, &large).unwrap();
        prop_assert!(small.is_subset(cs.pairs()));
        prop_assert!(cs.pairs().is_subset(cl.pairs()));
        let again = ideal_closure(&p, cs.pairs()).unwrap();
        prop_assert_eq!(again.pairs(), cs.pairs());
        prop_assert!(is_ideal(&p, cs.pairs()));
        // P∘seed∘P is the closure in one step.
        let one_step = p.pairs().compose(&small).unwrap().compose(p.pairs()).unwrap();
        prop_assert_eq!(&one_step, cs.pairs());
    }

    #[test]
    fn corner_generates_on_random_preorders(p in preorder(5)) {
        for f in enumerate_ideals(&p).unwrap() {
            let corner = corner_generator(&p, &f);
            let generated = generated_support(&p, &corner).unwrap();
            prop_assert_eq!(generated.pairs(), f.pairs());
        }
    }

    #[test]
    fn projection_lattice_is_closed(p in preorder(6)) {
        let sets = invariant_projections(&p).unwrap();
        prop_assert!(is_lattice(&sets));
        for s in &sets {
            prop_assert!(s.is_invariant_for(&p));
        }
    }
}
