//! Acceptance criteria 1 to 10, one PASS/FAIL line each. Exits nonzero if
//! any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use groupoidal::groupoid::{
    check_partial_order, generated_ideal_support, level_unit_listing, order_from_comparator, partial_homeo_of_isometry,
    principal_generator, refine_all, subordinate_check, subordinate_deletion, Arrow, Comparator, GSet, Listing,
    TailGroupoid, WordRelation,
};
use groupoidal::matrix::{default_max_iters, numeric_generated_support};
use groupoidal::relation::{
    corner_generator, enumerate_ideals, enumerate_ideals_bounded, full_sum_generator, generated_support, ideal_closure,
    reflexive_transitive_closure,
};
use groupoidal::tower::{
    embed_unit, lift_support, persistent_projections, search_enlargement_witness, EmbeddingKind, EmbeddingSpec, Tower,
};
use groupoidal::{PairSet, RationalMatrix, SupportRelation};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalan(n: u64) -> u64 {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

fn criterion_1() -> Outcome {
    let mut total = 0;
    for n in 1..=5 {
        let p = SupportRelation::upper_triangular(n);
        let ideals = enumerate_ideals(&p).map_err(|e| e.to_string())?;
        ensure(ideals.len() as u64 == catalan(n as u64 + 1), || {
            format!("T_{n} has {} ideals, expected Catalan({})", ideals.len(), n + 1)
        })?;
        for f in &ideals {
            let full = generated_support(&p, &full_sum_generator(f)).map_err(|e| e.to_string())?;
            ensure(full.pairs() == f.pairs(), || {
                format!("full-sum generator fails on {:?}", f.pairs())
            })?;
            let corner = corner_generator(&p, f);
            let gen = generated_support(&p, &corner).map_err(|e| e.to_string())?;
            ensure(gen.pairs() == f.pairs(), || {
                format!("corner generator fails on {:?}", f.pairs())
            })?;
            for (i, j) in corner.iter() {
                let mut smaller = corner.clone();
                smaller.remove(i, j);
                let g = generated_support(&p, &smaller).map_err(|e| e.to_string())?;
                ensure(g.pairs() != f.pairs(), || {
                    format!("corner of {:?} is not minimal: ({i},{j}) redundant", f.pairs())
                })?;
            }
        }
        total += ideals.len();
    }
    Ok(format!(
        "{total} ideals of T_1..T_5, both generators exact, corners minimal"
    ))
}

fn t7_reference_ideal() -> PairSet {
    // Row by row: columns carrying a star.
    let rows: [&[usize]; 7] = [
        &[1, 2, 3, 4, 5, 6, 7],
        &[2, 3, 4, 5, 6, 7],
        &[6, 7],
        &[6, 7],
        &[6, 7],
        &[6, 7],
        &[7],
    ];
    PairSet::from_pairs(
        7,
        rows.iter()
            .enumerate()
            .flat_map(|(i, cols)| cols.iter().map(move |&j| (i + 1, j))),
    )
    .unwrap()
}

fn criterion_2() -> Outcome {
    let p = SupportRelation::upper_triangular(7);
    let f = ideal_closure(&p, &t7_reference_ideal()).map_err(|e| e.to_string())?;
    ensure(f.pairs() == &t7_reference_ideal(), || {
        "reference pattern is not an ideal".into()
    })?;
    let corner = corner_generator(&p, &f);
    let want = PairSet::from_pairs(7, [(1, 1), (2, 2), (6, 6), (7, 7)]).unwrap();
    ensure(corner == want, || format!("corner generator {:?}", corner.to_vec()))?;
    let g = RationalMatrix::generic_from_support(&corner);
    let numeric = numeric_generated_support(&p, &g, default_max_iters(7)).map_err(|e| e.to_string())?;
    let symbolic = generated_support(&p, &corner).map_err(|e| e.to_string())?;
    ensure(&numeric == symbolic.pairs() && &numeric == f.pairs(), || {
        format!("numeric support {:?}", numeric.to_vec())
    })?;
    Ok(format!(
        "{} pairs, corners {:?}, numeric = symbolic",
        f.len(),
        corner.to_vec()
    ))
}

/// The displayed 12 × 12 images of `[[a, b], [c, d]]`; `.` cells are
/// elided in the reference pattern and not compared.
const REFINEMENT_PATTERN: [&str; 12] = [
    "a0..00b0..00",
    "0a..000b..00",
    "....00....00",
    "....00....00",
    "0000a00000b0",
    "00000a00000b",
    "c0..00d0..00",
    "0c..000d..00",
    "....00....00",
    "....00....00",
    "0000c00000d0",
    "00000c00000d",
];

const STANDARD_PATTERN: [&str; 12] = [
    "ab0000..0000",
    "cd0000..0000",
    "00ab00..0000",
    "00cd00..0000",
    "0000ab..0000",
    "0000cd..0000",
    "............",
    "............",
    "000000..ab00",
    "000000..cd00",
    "000000..00ab",
    "000000..00cd",
];

fn image_grid(spec: EmbeddingSpec) -> Vec<Vec<char>> {
    let mut grid = vec![vec!['0'; 12]; 12];
    for (i, j, name) in [(1, 1, 'a'), (1, 2, 'b'), (2, 1, 'c'), (2, 2, 'd')] {
        for (r, c) in embed_unit(spec, 2, i, j).unwrap() {
            grid[r - 1][c - 1] = name;
        }
    }
    grid
}

fn matches_pattern(grid: &[Vec<char>], pattern: &[&str; 12]) -> Result<(), String> {
    for (r, row) in pattern.iter().enumerate() {
        for (c, want) in row.chars().enumerate() {
            if want != '.' && grid[r][c] != want {
                return Err(format!("cell ({}, {}) is {} not {want}", r + 1, c + 1, grid[r][c]));
            }
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    matches_pattern(&image_grid(EmbeddingSpec::refinement(6)), &REFINEMENT_PATTERN)
        .map_err(|e| format!("refinement: {e}"))?;
    matches_pattern(&image_grid(EmbeddingSpec::standard(6)), &STANDARD_PATTERN)
        .map_err(|e| format!("standard: {e}"))?;
    let t2 = SupportRelation::upper_triangular(2);
    let t4 = PairSet::upper_triangular(4);
    for spec in [EmbeddingSpec::refinement(2), EmbeddingSpec::standard(2)] {
        ensure(lift_support(spec, &t2).pairs().is_subset(&t4), || {
            format!("{spec:?} leaves T_4")
        })?;
    }
    Ok("both 12x12 block patterns reproduced; rho, sigma map T_2 into T_4".into())
}

fn criterion_4() -> Outcome {
    let standard = Tower::uniform(2, EmbeddingKind::Standard, 2, 4).unwrap();
    let refinement = Tower::uniform(2, EmbeddingKind::Refinement, 2, 4).unwrap();
    let s = persistent_projections(&standard, 5).map_err(|e| e.to_string())?;
    let r = persistent_projections(&refinement, 5).map_err(|e| e.to_string())?;
    ensure(s[0].len() == 2, || format!("standard level 1 keeps {}", s[0].len()))?;
    let counts: Vec<usize> = r.iter().map(Vec::len).collect();
    let want: Vec<usize> = (1..=5).map(|k| (1 << k) + 1).collect();
    ensure(counts == want, || format!("refinement counts {counts:?}"))?;
    Ok(format!(
        "standard level 1: {}; refinement levels 1..5: {counts:?}",
        s[0].len()
    ))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for base in [2, 3] {
        for q in [2, 3] {
            let tower = Tower::uniform(base, EmbeddingKind::Refinement, q, 2).unwrap();
            for k in 1..=3 {
                for m in k + 1..=3 {
                    let lower = tower.level_support(k);
                    for ideal in enumerate_ideals_bounded(&lower, lower.size()).map_err(|e| e.to_string())? {
                        let lifted = tower.lift_ideal_chain(k, m, &ideal).map_err(|e| e.to_string())?;
                        let back = tower.pullback_chain(k, m, lifted.pairs());
                        ensure(&back == ideal.pairs(), || {
                            format!("T_{base} x{q}: level {k} ideal {:?} grows to {:?}", ideal.pairs(), back)
                        })?;
                        checked += 1;
                    }
                }
            }
        }
    }
    let w = search_enlargement_witness(EmbeddingKind::Standard, 0, 200)
        .ok_or("no strict-enlargement witness for seed 0")?;
    Ok(format!(
        "{checked} lift/intersect round trips exact; witness: T_{} x{} ideal {:?} pulls back to {:?}",
        w.lower.size(),
        w.spec.q,
        w.ideal.pairs().to_vec(),
        w.pulled_back.to_vec()
    ))
}

fn criterion_6() -> Outcome {
    let mut triples = 0usize;
    for r in 1..=3 {
        for depth in 1..=3 {
            let g = TailGroupoid::uniform(r, depth).map_err(|e| e.to_string())?;
            let arrows = g.arrows();
            let mut by_range: BTreeMap<_, Vec<&Arrow>> = BTreeMap::new();
            for a in &arrows {
                by_range.entry(a.0.clone()).or_default().push(a);
            }
            for a in &arrows {
                let ai = a.inverse();
                ensure(
                    a.compose(&ai) == Some(a.range()) && ai.compose(a) == Some(a.source()),
                    || format!("range/source identities fail at {a:?}"),
                )?;
                ensure(
                    a.range().compose(a).as_ref() == Some(a) && a.compose(&a.source()).as_ref() == Some(a),
                    || format!("unit laws fail at {a:?}"),
                )?;
                for b in &by_range[&a.1] {
                    let ab = a.compose(b).ok_or("composable pair refused")?;
                    ensure(ai.compose(&ab).as_ref() == Some(*b), || {
                        format!("a^-1(ab) != b at {a:?} {b:?}")
                    })?;
                    ensure(ab.compose(&b.inverse()).as_ref() == Some(a), || {
                        format!("(ab)b^-1 != a at {a:?} {b:?}")
                    })?;
                    for c in &by_range[&b.1] {
                        let left = ab.compose(c);
                        let right = b.compose(c).and_then(|bc| a.compose(&bc));
                        ensure(left.is_some() && left == right, || {
                            format!("associativity fails at {a:?} {b:?} {c:?}")
                        })?;
                        triples += 1;
                    }
                }
            }
            if r >= 2 {
                for c in [Comparator::Lex, Comparator::RevLex] {
                    let rep = check_partial_order(&order_from_comparator(&g, &c));
                    ensure(rep.is_partial && rep.is_total, || {
                        format!("{c:?} at r={r}, depth {depth}: {rep:?}")
                    })?;
                }
            }
        }
    }
    Ok(format!("{triples} composable triples; lex and revlex are total orders"))
}

fn lex_ideal_sets(g: &TailGroupoid, c: &Comparator) -> Result<Vec<WordRelation>, String> {
    let n = g.words().len();
    let p = SupportRelation::upper_triangular(n);
    enumerate_ideals(&p)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|f| WordRelation::from_pair_set(g, c, f.pairs()).map_err(|e| e.to_string()))
        .collect()
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for depth in 1..=3 {
        let g = TailGroupoid::uniform(2, depth).map_err(|e| e.to_string())?;
        let p = order_from_comparator(&g, &Comparator::Lex);
        for f in lex_ideal_sets(&g, &Comparator::Lex)? {
            let report = principal_generator(&f, Listing::FinestFirst).map_err(|e| e.to_string())?;
            ensure(report.compression_holds(), || {
                format!("compression fails at {:?} for {:?}", report.failures(), f.pairs())
            })?;
            let support = generated_ideal_support(&p, &report.generator.to_function()).map_err(|e| e.to_string())?;
            ensure(&support == f.pairs(), || {
                format!("generated support differs for {:?}", f.pairs())
            })?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} lex ideal sets at depth <= 3: compression exact, supports equal"
    ))
}

fn criterion_8() -> Outcome {
    let g = TailGroupoid::uniform(2, 3).map_err(|e| e.to_string())?;
    let a = g.alphabets();
    let mut children = 0;
    for len in 1..3 {
        for (i, j) in g.prefix_pairs(len) {
            let parent = GSet::singleton(Arrow(i.clone(), j.clone()));
            for (x, y) in g.split(&i, &j).map_err(|e| e.to_string())? {
                let ok = subordinate_check(&GSet::singleton(Arrow(x, y)), &parent, a).map_err(|e| e.to_string())?;
                ensure(ok, || format!("child of {i:?},{j:?} not subordinate"))?;
                children += 1;
            }
        }
    }
    let mut covers = 0;
    for f in lex_ideal_sets(&g, &Comparator::Lex)? {
        let units = level_unit_listing(&f).map_err(|e| e.to_string())?;
        let kept = subordinate_deletion(&units, a).map_err(|e| e.to_string())?;
        let refined = refine_all(&kept, a, 3).map_err(|e| e.to_string())?;
        let mut union = BTreeSet::new();
        for e in &refined {
            for x in e.pairs() {
                ensure(union.insert(x.clone()), || format!("kept units overlap at {x:?}"))?;
            }
        }
        ensure(&union == f.pairs(), || format!("cover differs from {:?}", f.pairs()))?;
        covers += 1;
    }
    Ok(format!(
        "{children} children subordinate; {covers} depth-3 listings reduce to disjoint covers"
    ))
}

fn criterion_9() -> Outcome {
    let mut v = RationalMatrix::zeros(7);
    for (i, j) in [(1, 3), (2, 7), (4, 5)] {
        v.set(i, j, groupoidal::scalar::complex_rational(1, 1, 0, 1));
    }
    let h = partial_homeo_of_isometry(&v).map_err(|e| e.to_string())?;
    let want: BTreeMap<usize, usize> = [(3, 1), (5, 4), (7, 2)].into_iter().collect();
    ensure(h.map == want, || format!("got {:?}", h.map))?;
    Ok(format!("{:?}", h.map))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut seeds = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let mut raw = PairSet::empty(n);
        for _ in 0..rng.gen_range(0..=n * n) {
            raw.insert(rng.gen_range(1..=n), rng.gen_range(1..=n));
        }
        let p = reflexive_transitive_closure(&raw);
        for (i, j) in p.pairs().iter() {
            let seed = PairSet::from_pairs(n, [(i, j)]).unwrap();
            let symbolic = ideal_closure(&p, &seed).map_err(|e| e.to_string())?;
            let g = RationalMatrix::generic_from_support(&seed);
            let numeric = numeric_generated_support(&p, &g, default_max_iters(n)).map_err(|e| e.to_string())?;
            ensure(&numeric == symbolic.pairs(), || {
                format!(
                    "P = {:?}, seed ({i},{j}): {:?} vs {:?}",
                    p.pairs().to_vec(),
                    numeric.to_vec(),
                    symbolic.pairs().to_vec()
                )
            })?;
            seeds += 1;
        }
    }
    Ok(format!("{seeds} single-seed ideals over 100 seeded relations agree"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("digraph principal-ideal theorem, n <= 5", criterion_1),
        ("T_7 reference ideal regression", criterion_2),
        ("embedding block patterns", criterion_3),
        ("Lat separation on 2^inf towers", criterion_4),
        ("nest inductivity and enlargement witness", criterion_5),
        ("groupoid axioms and orders", criterion_6),
        ("dyadic generator at finite depth", criterion_7),
        ("subordinate machinery", criterion_8),
        ("partial homeomorphism of the T_7 isometry", criterion_9),
        ("closure vs exact matrix generation", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
