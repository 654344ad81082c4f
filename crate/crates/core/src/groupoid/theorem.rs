//! Principal generators of ideals in the groupoid picture: disjointify the
//! basis G-sets of an ideal set and weight them by `2^-i`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::scalar::{Dyadic, Scalar};

use super::function::{DyadicFunction, GSetCombination, GroupoidFunction};
use super::gset::{Arrow, GSet};
use super::order::WordRelation;
use super::words::Alphabets;

/// `E_i = K_i ∖ (K_1 ∪ ⋯ ∪ K_{i−1})`. Empty results keep their slot.
pub fn disjointify(k: &[GSet]) -> Result<Vec<GSet>> {
    let Some(first) = k.first() else {
        return Ok(Vec::new());
    };
    let depth = first.depth();
    let mut seen: BTreeSet<Arrow> = BTreeSet::new();
    let mut out = Vec::with_capacity(k.len());
    for set in k {
        if set.depth() != depth {
            return Err(Error::DepthMismatch {
                expected: depth,
                found: set.depth(),
            });
        }
        out.push(set.without(&seen));
        seen.extend(set.pairs().iter().cloned());
    }
    Ok(out)
}

/// `g = Σ χ_{E_i} / 2^i` over the nonempty `E_i` (1-based `i`).
pub fn dyadic_generator(e: &[GSet]) -> Result<DyadicFunction> {
    let depth = e.first().map_or(0, GSet::depth);
    for (i, a) in e.iter().enumerate() {
        for (j, b) in e.iter().enumerate().skip(i + 1) {
            if !a.is_disjoint(b) {
                return Err(Error::Overlap(i + 1, j + 1));
            }
        }
    }
    let terms = e
        .iter()
        .enumerate()
        .map(|(i, set)| (set.clone(), Dyadic::pow2_inv((i + 1) as u32)));
    DyadicFunction::new(depth, terms)
}

/// `r(χ_E) g d(χ_E)`: each term cut down to ranges in `r(E)` and sources
/// in `d(E)`.
pub fn compress_by<T: Scalar>(e: &GSet, g: &GSetCombination<T>) -> Result<GSetCombination<T>> {
    if !e.is_empty() && e.depth() != g.depth() {
        return Err(Error::DepthMismatch {
            expected: g.depth(),
            found: e.depth(),
        });
    }
    let ranges = e.range_words();
    let sources = e.source_words();
    GSetCombination::new(
        g.depth(),
        g.terms()
            .iter()
            .map(|(set, c)| (set.restrict(&ranges, &sources), c.clone())),
    )
}

/// The same compression computed as `χ_{r(E)} ∗ g ∗ χ_{d(E)}`.
pub fn compress_by_convolution<T: Scalar>(e: &GSet, g: &GroupoidFunction<T>) -> Result<GroupoidFunction<T>> {
    GroupoidFunction::indicator(&e.range_set())
        .convolve(g)?
        .convolve(&GroupoidFunction::indicator(&e.source_set()))
}

/// Order of the basis G-sets inside an ideal set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Listing {
    /// Longest prefixes first. The compression identity holds.
    #[default]
    FinestFirst,
    /// Shortest prefixes first. Disjointification can then cut a coarse
    /// set so that the compression picks up a neighbour's weight.
    CoarsestFirst,
}

/// Every `E_{i,j} ⊆ F`, level by level, row-major inside a level.
pub fn basis_listing(f: &WordRelation, listing: Listing) -> Result<Vec<GSet>> {
    let g = f.groupoid();
    let lens: Vec<usize> = match listing {
        Listing::FinestFirst => (1..=g.depth()).rev().collect(),
        Listing::CoarsestFirst => (1..=g.depth()).collect(),
    };
    let mut out = Vec::new();
    for len in lens {
        for (i, j) in g.prefix_pairs(len) {
            let e = g.basis_gset(&i, &j)?;
            if e.is_subset_of(f.pairs()) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct GeneratorReport {
    pub listing: Vec<GSet>,
    pub disjoint: Vec<GSet>,
    pub generator: DyadicFunction,
    /// Whether `r(χ_{E_j}) g d(χ_{E_j}) = χ_{E_j} / 2^j`, per `j`.
    pub compression: Vec<bool>,
}

impl GeneratorReport {
    pub fn compression_holds(&self) -> bool {
        self.compression.iter().all(|&ok| ok)
    }

    /// 1-based indices where the identity fails.
    pub fn failures(&self) -> Vec<usize> {
        (1..=self.compression.len())
            .filter(|&j| !self.compression[j - 1])
            .collect()
    }
}

/// List, disjointify, weight, and check every compression.
pub fn principal_generator(f: &WordRelation, listing: Listing) -> Result<GeneratorReport> {
    let k = basis_listing(f, listing)?;
    let e = disjointify(&k)?;
    let g = if e.is_empty() {
        DyadicFunction::zero(f.depth())
    } else {
        dyadic_generator(&e)?
    };
    let compression = e
        .iter()
        .enumerate()
        .map(|(j, ej)| {
            let lhs = compress_by(ej, &g)?;
            let rhs = DyadicFunction::new(f.depth(), [(ej.clone(), Dyadic::pow2_inv((j + 1) as u32))])?;
            Ok(lhs.same_function(&rhs))
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(GeneratorReport {
        listing: k,
        disjoint: e,
        generator: g,
        compression,
    })
}

/// Support of the two-sided ideal `span{χ_p ∗ g ∗ χ_q : p, q ∈ P}`.
pub fn generated_ideal_support<T: Scalar>(p: &WordRelation, g: &GroupoidFunction<T>) -> Result<BTreeSet<Arrow>> {
    let units: Vec<GroupoidFunction<T>> = p
        .pairs()
        .iter()
        .map(|a| GroupoidFunction::indicator(&GSet::singleton(a.clone())))
        .collect();
    // Supports of unit products do not depend on the coefficients, so one
    // representative per support is enough on each side.
    let mut left: BTreeMap<BTreeSet<Arrow>, GroupoidFunction<T>> = BTreeMap::new();
    for u in &units {
        let x = u.convolve(g)?;
        if !x.is_zero() {
            left.entry(x.support()).or_insert(x);
        }
    }
    let mut support = BTreeSet::new();
    for x in left.values() {
        for u in &units {
            support.extend(x.convolve(u)?.support());
        }
    }
    Ok(support)
}

/// `u` is subordinate to `v` when `r(u) φ(v) d(u) = u`, with `φ(v)` the
/// image of `v` at the depth of `u`.
pub fn subordinate_check(u: &GSet, v: &GSet, alphabets: &Alphabets) -> Result<bool> {
    if v.depth() > u.depth() {
        return Err(Error::DepthMismatch {
            expected: u.depth(),
            found: v.depth(),
        });
    }
    let image = v.refine(alphabets, u.depth())?;
    let compressed = compress_by(u, &GSetCombination::<Dyadic>::indicator(&image))?;
    Ok(compressed.same_function(&GSetCombination::indicator(u)))
}

/// Level-major, row-major: depths never decrease, and inside a depth the
/// sets strictly increase.
pub fn check_listing_order(units: &[GSet]) -> Result<()> {
    for (k, pair) in units.windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        if b.depth() < a.depth() || (b.depth() == a.depth() && b <= a) {
            return Err(Error::OrderingViolated(k + 2));
        }
    }
    Ok(())
}

/// Drops every member subordinate to an earlier member of the list.
pub fn subordinate_deletion(units: &[GSet], alphabets: &Alphabets) -> Result<Vec<GSet>> {
    check_listing_order(units)?;
    let mut kept = Vec::new();
    for (k, u) in units.iter().enumerate() {
        let mut subordinate = false;
        for v in &units[..k] {
            if v.depth() <= u.depth() && subordinate_check(u, v, alphabets)? {
                subordinate = true;
                break;
            }
        }
        if !subordinate {
            kept.push(u.clone());
        }
    }
    Ok(kept)
}

/// The level-`l` matrix units `{(i, j)}` whose image at the top depth lies
/// in `F`, level-major and row-major.
pub fn level_unit_listing(f: &WordRelation) -> Result<Vec<GSet>> {
    let g = f.groupoid();
    let mut out = Vec::new();
    for len in 1..=g.depth() {
        for (i, j) in g.prefix_pairs(len) {
            if g.basis_gset(&i, &j)?.is_subset_of(f.pairs()) {
                out.push(GSet::singleton(Arrow(i, j)));
            }
        }
    }
    Ok(out)
}

/// Images of the sets at a common depth, each as its own G-set.
pub fn refine_all(units: &[GSet], alphabets: &Alphabets, depth: usize) -> Result<Vec<GSet>> {
    units.iter().map(|u| u.refine(alphabets, depth)).collect()
}
