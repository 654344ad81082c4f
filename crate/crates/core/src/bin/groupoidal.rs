//! `groupoidal`: enumerate ideals, verify principal generators, inspect
//! towers and emit spectrum artifacts.
//!
//! Exit codes: 0 success, 1 verification failed, 2 bad input or
//! containment violation, 3 size bound exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use groupoidal::groupoid::{
    check_partial_order, generated_ideal_support, ideal_set_check, order_from_comparator, principal_generator,
    Alphabets, Comparator, Listing, TailGroupoid, WordRelation,
};
use groupoidal::io::{from_json, pi_csv, to_dot, to_json, DyadicFunctionJson, GSetJson, IdealJson, RelationJson};
use groupoidal::relation::{corner_generator, enumerate_ideals_bounded, full_sum_generator, generated_support};
use groupoidal::tower::{
    inductivity_report, lift_support, persistent_projections_with, search_enlargement_witness, EmbeddingKind, Tower,
};
use groupoidal::{Dyadic, Error, IdealSet, Limits, PairSet};

#[derive(Parser)]
#[command(name = "groupoidal", version, about = "Digraph algebra ideals, towers and spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Number of algebra levels (tower) or truncation depth (spectrum).
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Size bound: matrix size for ideal enumeration, words for spectra.
    #[arg(long, global = true)]
    bound: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List every ideal of a support relation with its generators.
    Ideals { relation: PathBuf },
    /// Check that a generator's two-sided ideal is exactly the given ideal.
    Verify {
        relation: PathBuf,
        ideal: PathBuf,
        generator: PathBuf,
    },
    /// Per-level reports on a tower of triangular algebras.
    Tower {
        tower: PathBuf,
        #[arg(value_enum)]
        action: TowerAction,
        /// Ideal at the top level for `inductivity`; all ideals otherwise.
        #[arg(long)]
        ideal: Option<PathBuf>,
        /// Embedding kind searched by `witness`.
        #[arg(long, value_enum, default_value_t = KindArg::Standard)]
        kind: KindArg,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Orders, π-plots and dyadic generators on the truncated spectrum.
    Spectrum {
        tower: PathBuf,
        #[arg(value_enum)]
        action: SpectrumAction,
        /// Ideal set (word pairs) for `generator`.
        ideal_set: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OrderArg::Lex)]
        order: OrderArg,
        #[arg(long, value_enum, default_value_t = ListingArg::FinestFirst)]
        listing: ListingArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum TowerAction {
    Lift,
    Lat,
    Inductivity,
    Witness,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectrumAction {
    Emit,
    Generator,
    Check,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Refinement,
    Standard,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Revlex,
    Alternation,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListingArg {
    FinestFirst,
    CoarseFirst,
}

enum Failure {
    Input(String),
    Bound(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BoundExceeded { .. } => Failure::Bound(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Report text and whether the command's check passed.
struct Report {
    text: String,
    ok: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, ok: true }
    }
}

type Outcome = std::result::Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Ideals { relation } => cmd_ideals(&cli, relation),
        Command::Verify {
            relation,
            ideal,
            generator,
        } => cmd_verify(&cli, relation, ideal, generator),
        Command::Tower {
            tower,
            action,
            ideal,
            kind,
            trials,
        } => cmd_tower(&cli, tower, *action, ideal.as_deref(), *kind, *trials),
        Command::Spectrum {
            tower,
            action,
            ideal_set,
            order,
            listing,
        } => cmd_spectrum(&cli, tower, *action, ideal_set.as_deref(), *order, *listing),
    };
    match result {
        Ok(report) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &report.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Bound(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn read<T: for<'de> Deserialize<'de>>(path: &Path) -> std::result::Result<T, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn unsupported(format: Format, command: &str) -> Failure {
    let name = format
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_owned();
    Failure::Input(format!("format {name} is not available for {command}"))
}

fn limits(cli: &Cli) -> Limits {
    let mut limits = Limits::from_env();
    if let Some(b) = cli.bound {
        limits.max_enumeration_size = b;
        limits.max_words = b;
    }
    limits
}

fn pairs_text(p: &PairSet) -> String {
    let items: Vec<String> = p.iter().map(|(i, j)| format!("({i},{j})")).collect();
    format!("{{{}}}", items.join(", "))
}

fn cmd_ideals(cli: &Cli, path: &Path) -> Outcome {
    let p = read::<RelationJson>(path)?.to_support()?;
    let ideals = enumerate_ideals_bounded(&p, limits(cli).max_enumeration_size)?;
    let rows: Vec<(&IdealSet, PairSet, PairSet)> = ideals
        .iter()
        .map(|f| (f, full_sum_generator(f), corner_generator(&p, f)))
        .collect();
    let text = match cli.format.unwrap_or(Format::Pretty) {
        Format::Pretty => {
            let mut out = format!("{} ideals\n", ideals.len());
            for (k, (f, full, corner)) in rows.iter().enumerate() {
                let _ = writeln!(out, "\nideal {} ({} pairs)", k + 1, f.len());
                out.push_str(&f.pairs().star_pattern());
                let _ = writeln!(out, "full-sum generator: {}", pairs_text(full));
                let _ = writeln!(out, "corner generator: {}", pairs_text(corner));
            }
            out
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(f, full, corner)| {
                    json!({
                        "pairs": RelationJson::from_pairs(f.pairs()).pairs,
                        "full_sum": RelationJson::from_pairs(full).pairs,
                        "corner": RelationJson::from_pairs(corner).pairs,
                    })
                })
                .collect();
            to_json(&json!({ "count": ideals.len(), "ideals": items })) + "\n"
        }
        Format::Dot => rows
            .iter()
            .enumerate()
            .map(|(k, (f, _, _))| to_dot(&format!("ideal_{}", k + 1), f.pairs()))
            .collect(),
        f @ Format::Csv => return Err(unsupported(f, "ideals")),
    };
    Ok(Report::ok(text))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PairsInput {
    Ideal(IdealJson),
    Relation(RelationJson),
}

fn cmd_verify(cli: &Cli, relation: &Path, ideal: &Path, generator: &Path) -> Outcome {
    let p = read::<RelationJson>(relation)?.to_support()?;
    let f = match read::<PairsInput>(ideal)? {
        PairsInput::Ideal(j) => {
            if j.parent.to_pairs()? != *p.pairs() {
                return Err(Failure::Input("ideal file names a different relation".into()));
            }
            PairSet::from_pairs(p.size(), j.pairs.iter().map(|&[i, k]| (i, k)))?
        }
        PairsInput::Relation(j) => j.to_pairs()?,
    };
    let g = read::<RelationJson>(generator)?.to_pairs()?;
    for (name, set, parent, parent_name) in [("ideal", &f, p.pairs(), "relation"), ("generator", &g, &f, "ideal")] {
        if set.size() != parent.size() {
            return Err(Error::SizeMismatch {
                expected: parent.size(),
                found: set.size(),
            }
            .into());
        }
        if let Some((i, j)) = set.first_outside(parent) {
            return Err(Failure::Input(format!(
                "{name} pair ({i}, {j}) is not in the {parent_name}"
            )));
        }
    }
    let generated = generated_support(&p, &g)?;
    let missing = f.difference(generated.pairs());
    let extra = generated.pairs().difference(&f);
    let ok = missing.is_empty() && extra.is_empty();
    let text = match cli.format.unwrap_or(Format::Pretty) {
        Format::Pretty => {
            if ok {
                "PRINCIPAL-VERIFIED\n".to_owned()
            } else {
                let mut out = String::from("NOT VERIFIED\n");
                let _ = writeln!(out, "unreachable: {}", pairs_text(&missing));
                let _ = writeln!(out, "outside ideal: {}", pairs_text(&extra));
                out.push_str("generated:\n");
                out.push_str(&generated.pairs().star_pattern());
                out
            }
        }
        Format::Json => {
            to_json(&json!({
                "verified": ok,
                "unreachable": RelationJson::from_pairs(&missing).pairs,
                "outside_ideal": RelationJson::from_pairs(&extra).pairs,
            })) + "\n"
        }
        f => return Err(unsupported(f, "verify")),
    };
    Ok(Report { text, ok })
}

fn kind_name(kind: EmbeddingKind) -> &'static str {
    match kind {
        EmbeddingKind::Refinement => "refinement",
        EmbeddingKind::Standard => "standard",
    }
}

fn cmd_tower(
    cli: &Cli,
    path: &Path,
    action: TowerAction,
    ideal: Option<&Path>,
    kind: KindArg,
    trials: usize,
) -> Outcome {
    let tower: Tower = read(path)?;
    let tower = Tower::new(tower.base, tower.levels)?;
    let limits = limits(cli);
    let depth = cli.depth.unwrap_or(tower.height());
    let format = cli.format.unwrap_or(Format::Pretty);
    if !matches!(format, Format::Pretty | Format::Json) {
        return Err(unsupported(format, "tower"));
    }
    if !matches!(action, TowerAction::Witness) {
        tower.check_depth(depth, &limits)?;
    }
    match action {
        TowerAction::Lift => {
            let mut out = String::new();
            let mut levels = Vec::new();
            for k in 1..depth {
                let spec = tower.levels[k - 1];
                let lifted = lift_support(spec, &tower.level_support(k));
                let inside = lifted.pairs().is_subset(tower.level_support(k + 1).pairs());
                let _ = writeln!(
                    out,
                    "level {k} -> {}: {} x{}, T_{} lifts to {} of the {} pairs of T_{}{}",
                    k + 1,
                    kind_name(spec.kind),
                    spec.q,
                    tower.size(k),
                    lifted.pairs().len(),
                    tower.level_support(k + 1).pairs().len(),
                    tower.size(k + 1),
                    if inside { "" } else { " (not contained)" }
                );
                if tower.size(k + 1) <= 16 {
                    out.push_str(&lifted.pairs().star_pattern());
                }
                levels.push(json!({
                    "from": k,
                    "kind": kind_name(spec.kind),
                    "q": spec.q,
                    "lifted": RelationJson::from_pairs(lifted.pairs()),
                    "contained": inside,
                }));
            }
            if depth == 1 {
                let _ = writeln!(out, "level 1: T_{}, nothing to lift", tower.size(1));
            }
            Ok(Report::ok(match format {
                Format::Json => to_json(&json!({ "levels": levels })) + "\n",
                _ => out,
            }))
        }
        TowerAction::Lat => {
            let survivors = persistent_projections_with(&tower, depth, &limits)?;
            let mut out = String::new();
            let mut levels = Vec::new();
            for (k, sets) in survivors.iter().enumerate() {
                let members: Vec<Vec<usize>> = sets.iter().map(|s| s.members().iter().copied().collect()).collect();
                let _ = writeln!(
                    out,
                    "level {} (n = {}): {} persistent",
                    k + 1,
                    tower.size(k + 1),
                    sets.len()
                );
                if tower.size(k + 1) <= 8 {
                    for m in &members {
                        let _ = writeln!(out, "  {m:?}");
                    }
                }
                levels.push(
                    json!({ "level": k + 1, "size": tower.size(k + 1), "count": sets.len(), "persistent": members }),
                );
            }
            Ok(Report::ok(match format {
                Format::Json => to_json(&json!({ "levels": levels })) + "\n",
                _ => out,
            }))
        }
        TowerAction::Inductivity => {
            let ideals = match ideal {
                Some(p) => vec![read::<IdealJson>(p)?.to_ideal()?],
                None => enumerate_ideals_bounded(&tower.level_support(depth), limits.max_enumeration_size)?,
            };
            let mut out = String::new();
            let mut items = Vec::new();
            let mut all = true;
            for (k, f) in ideals.iter().enumerate() {
                let r = inductivity_report(&tower, f, depth)?;
                all &= r.inductive;
                let sizes: Vec<usize> = r.pullbacks.iter().map(PairSet::len).collect();
                let _ = writeln!(
                    out,
                    "ideal {} ({} pairs): level intersections {:?}, {}",
                    k + 1,
                    f.len(),
                    sizes,
                    if r.inductive { "inductive" } else { "NOT inductive" }
                );
                items.push(json!({
                    "pairs": RelationJson::from_pairs(f.pairs()).pairs,
                    "intersection_sizes": sizes,
                    "inductive": r.inductive,
                }));
            }
            let _ = writeln!(
                out,
                "{} of {} inductive",
                items.iter().filter(|i| i["inductive"] == true).count(),
                ideals.len()
            );
            Ok(Report {
                text: match format {
                    Format::Json => to_json(&json!({ "ideals": items })) + "\n",
                    _ => out,
                },
                ok: all,
            })
        }
        TowerAction::Witness => {
            let kind = match kind {
                KindArg::Refinement => EmbeddingKind::Refinement,
                KindArg::Standard => EmbeddingKind::Standard,
            };
            let found = search_enlargement_witness(kind, cli.seed, trials);
            let text = match (&found, format) {
                (None, Format::Json) => to_json(&json!({ "found": false })) + "\n",
                (None, _) => format!("no witness in {trials} trials (seed {})\n", cli.seed),
                (Some(w), Format::Json) => {
                    to_json(&json!({
                        "found": true,
                        "kind": kind_name(w.spec.kind),
                        "q": w.spec.q,
                        "lower": RelationJson::from_pairs(w.lower.pairs()),
                        "upper": RelationJson::from_pairs(w.upper.pairs()),
                        "ideal": RelationJson::from_pairs(w.ideal.pairs()).pairs,
                        "pulled_back": RelationJson::from_pairs(&w.pulled_back).pairs,
                    })) + "\n"
                }
                (Some(w), _) => {
                    let mut out = format!(
                        "witness: {} x{} from T_{} into a {}-point digraph algebra\n",
                        kind_name(w.spec.kind),
                        w.spec.q,
                        w.lower.size(),
                        w.upper.size()
                    );
                    out.push_str("upper support:\n");
                    out.push_str(&w.upper.pairs().star_pattern());
                    let _ = writeln!(out, "ideal: {}", pairs_text(w.ideal.pairs()));
                    let _ = writeln!(out, "lift then pull back: {}", pairs_text(&w.pulled_back));
                    out
                }
            };
            Ok(Report {
                text,
                ok: found.is_some(),
            })
        }
    }
}

#[derive(Serialize)]
struct TermRow {
    index: usize,
    weight: String,
    pairs: usize,
    compression: bool,
}

fn cmd_spectrum(
    cli: &Cli,
    path: &Path,
    action: SpectrumAction,
    ideal_set: Option<&Path>,
    order: OrderArg,
    listing: ListingArg,
) -> Outcome {
    let tower: Tower = read(path)?;
    let tower = Tower::new(tower.base, tower.levels)?;
    let alphabets = Alphabets::new(tower.alphabets())?;
    let depth = cli.depth.unwrap_or(tower.height());
    let groupoid = TailGroupoid::new(&alphabets, depth, &limits(cli))?;
    let comparator = match order {
        OrderArg::Lex => Comparator::Lex,
        OrderArg::Revlex => Comparator::RevLex,
        OrderArg::Alternation => Comparator::Alternation(tower.kinds()),
    };
    let p = order_from_comparator(&groupoid, &comparator);
    match action {
        SpectrumAction::Check => {
            let r = check_partial_order(&p);
            let text = match cli.format.unwrap_or(Format::Pretty) {
                Format::Pretty => format!(
                    "{} pairs on {} words\nis_partial: {}\nis_total: {}\nis_equivalence: {}\n",
                    p.len(),
                    groupoid.words().len(),
                    r.is_partial,
                    r.is_total,
                    r.is_equivalence
                ),
                Format::Json => {
                    to_json(&json!({
                        "pairs": p.len(),
                        "is_partial": r.is_partial,
                        "is_total": r.is_total,
                        "is_equivalence": r.is_equivalence,
                    })) + "\n"
                }
                f => return Err(unsupported(f, "spectrum check")),
            };
            Ok(Report {
                text,
                ok: r.is_partial && r.is_total,
            })
        }
        SpectrumAction::Emit => {
            let text = match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => pi_csv(&p)?,
                Format::Json => to_json(&GSetJson::from_relation(&p)) + "\n",
                Format::Dot => to_dot("P", &p.to_pair_set(&comparator)),
                Format::Pretty => p.to_pair_set(&comparator).star_pattern(),
            };
            Ok(Report::ok(text))
        }
        SpectrumAction::Generator => {
            let path = ideal_set.ok_or_else(|| Failure::Input("generator needs an ideal-set file".into()))?;
            let f: WordRelation = read::<GSetJson>(path)?.to_relation(&groupoid)?;
            if !ideal_set_check(&p, &f)? {
                return Err(Failure::Input("the pairs do not form an ideal set of the order".into()));
            }
            let listing = match listing {
                ListingArg::FinestFirst => Listing::FinestFirst,
                ListingArg::CoarseFirst => Listing::CoarsestFirst,
            };
            let report = principal_generator(&f, listing)?;
            let support = generated_ideal_support(&p, &report.generator.to_function())?;
            let support_ok = &support == f.pairs();
            let ok = report.compression_holds() && support_ok;
            let rows: Vec<TermRow> = report
                .disjoint
                .iter()
                .enumerate()
                .map(|(j, e)| TermRow {
                    index: j + 1,
                    weight: Dyadic::pow2_inv((j + 1) as u32).to_string(),
                    pairs: e.len(),
                    compression: report.compression[j],
                })
                .collect();
            let text = match cli.format.unwrap_or(Format::Pretty) {
                Format::Pretty => {
                    let mut out = format!(
                        "{} basis sets listed, {} nonempty after disjointification\n",
                        report.listing.len(),
                        report.generator.terms().len()
                    );
                    for (row, e) in rows.iter().zip(&report.disjoint) {
                        if e.is_empty() {
                            continue;
                        }
                        let _ = writeln!(
                            out,
                            "E_{} weight {}: {:?}  compression {}",
                            row.index,
                            row.weight,
                            e,
                            if row.compression { "ok" } else { "FAILS" }
                        );
                    }
                    let failures = report.failures();
                    if failures.is_empty() {
                        out.push_str("all compression identities hold\n");
                    } else {
                        let _ = writeln!(out, "compression fails at {failures:?}");
                    }
                    let _ = writeln!(
                        out,
                        "generated ideal support {} the ideal set",
                        if support_ok { "equals" } else { "DIFFERS FROM" }
                    );
                    out
                }
                Format::Json => {
                    let g = DyadicFunctionJson::from_function(&report.generator)?;
                    to_json(&json!({
                        "generator": g,
                        "terms": rows,
                        "compression_holds": report.compression_holds(),
                        "support_equals_ideal_set": support_ok,
                    })) + "\n"
                }
                f => return Err(unsupported(f, "spectrum generator")),
            };
            Ok(Report { text, ok })
        }
    }
}
