//! Interchange formats: JSON for every input and output of the binary,
//! DOT for relations, CSV for π-map plots.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::{pi_coordinate_mixed, Arrow, DyadicFunction, GSet, TailGroupoid, Word, WordRelation};
use crate::matrix::Matrix;
use crate::relation::{IdealSet, PairSet, SupportRelation};
use crate::scalar::{ComplexRational, Dyadic};

/// `{"n": 3, "pairs": [[1, 2], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub n: usize,
    pub pairs: Vec<[usize; 2]>,
}

impl RelationJson {
    pub fn from_pairs(p: &PairSet) -> Self {
        RelationJson {
            n: p.size(),
            pairs: p.iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    pub fn to_pairs(&self) -> Result<PairSet> {
        PairSet::from_pairs(self.n, self.pairs.iter().map(|&[i, j]| (i, j)))
    }

    pub fn to_support(&self) -> Result<SupportRelation> {
        SupportRelation::new(self.to_pairs()?)
    }
}

/// `{"parent": {relation}, "pairs": [[i, j], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub parent: RelationJson,
    pub pairs: Vec<[usize; 2]>,
}

impl IdealJson {
    pub fn from_ideal(f: &IdealSet) -> Self {
        IdealJson {
            parent: RelationJson::from_pairs(f.parent().pairs()),
            pairs: f.pairs().iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    pub fn to_ideal(&self) -> Result<IdealSet> {
        let parent = self.parent.to_support()?;
        let pairs = PairSet::from_pairs(parent.size(), self.pairs.iter().map(|&[i, j]| (i, j)))?;
        IdealSet::new(parent, pairs)
    }
}

/// `{"n": 2, "entries": [[[re_num, re_den, im_num, im_den], ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<[i64; 4]>>,
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Encoding(format!("{x} does not fit in 64 bits")))
}

impl MatrixJson {
    pub fn from_matrix(m: &Matrix<ComplexRational>) -> Result<Self> {
        let entries = m
            .rows()
            .map(|row| {
                row.iter()
                    .map(|z| {
                        Ok([
                            small(z.re.numer())?,
                            small(z.re.denom())?,
                            small(z.im.numer())?,
                            small(z.im.denom())?,
                        ])
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MatrixJson { n: m.size(), entries })
    }

    pub fn to_matrix(&self) -> Result<Matrix<ComplexRational>> {
        if self.entries.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: self.entries.len(),
            });
        }
        let rows = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&[a, b, c, d]| {
                        if b == 0 || d == 0 {
                            return Err(Error::Encoding("zero denominator".into()));
                        }
                        Ok(Complex::new(
                            BigRational::new(a.into(), b.into()),
                            BigRational::new(c.into(), d.into()),
                        ))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }
}

/// `{"depth": k, "pairs": [[[u...], [v...]], ...]}`; also used for
/// relations on words, such as ideal sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSetJson {
    pub depth: usize,
    pub pairs: Vec<[Vec<usize>; 2]>,
}

fn arrows_json<'a>(arrows: impl Iterator<Item = &'a Arrow>) -> Vec<[Vec<usize>; 2]> {
    arrows
        .map(|a| [a.0.letters().to_vec(), a.1.letters().to_vec()])
        .collect()
}

impl GSetJson {
    pub fn from_gset(e: &GSet) -> Self {
        GSetJson {
            depth: e.depth(),
            pairs: arrows_json(e.pairs().iter()),
        }
    }

    pub fn from_relation(r: &WordRelation) -> Self {
        GSetJson {
            depth: r.depth(),
            pairs: arrows_json(r.pairs().iter()),
        }
    }

    fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        self.pairs
            .iter()
            .map(|[u, v]| Arrow(Word::new(u.clone()), Word::new(v.clone())))
    }

    pub fn to_gset(&self) -> Result<GSet> {
        GSet::new(self.depth, self.arrows())
    }

    pub fn to_relation(&self, groupoid: &TailGroupoid) -> Result<WordRelation> {
        if self.depth != groupoid.depth() {
            return Err(Error::DepthMismatch {
                expected: groupoid.depth(),
                found: self.depth,
            });
        }
        WordRelation::new(groupoid, self.arrows())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadicTermJson {
    pub gset: GSetJson,
    pub num: i64,
    pub log2_den: u32,
}

/// `{"terms": [{"gset": {...}, "num": 1, "log2_den": 2}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadicFunctionJson {
    pub terms: Vec<DyadicTermJson>,
}

impl DyadicFunctionJson {
    pub fn from_function(g: &DyadicFunction) -> Result<Self> {
        let terms = g
            .terms()
            .iter()
            .map(|(e, c)| {
                Ok(DyadicTermJson {
                    gset: GSetJson::from_gset(e),
                    num: small(c.numerator())?,
                    log2_den: c.log2_denominator(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DyadicFunctionJson { terms })
    }

    /// The depth is taken from the first term; an empty list needs it given.
    pub fn to_function(&self, depth: usize) -> Result<DyadicFunction> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.gset.to_gset()?, Dyadic::new(t.num, t.log2_den))))
            .collect::<Result<Vec<_>>>()?;
        let depth = self.terms.first().map_or(depth, |t| t.gset.depth);
        DyadicFunction::new(depth, terms)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serialises")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Encoding(e.to_string()))
}

/// Graphviz digraph; loops are left implicit.
pub fn to_dot(name: &str, p: &PairSet) -> String {
    let mut out = format!("digraph {name} {{\n");
    for i in 1..=p.size() {
        let _ = writeln!(out, "  {i};");
    }
    for (i, j) in p.iter().filter(|(i, j)| i != j) {
        let _ = writeln!(out, "  {i} -> {j};");
    }
    out.push_str("}\n");
    out
}

/// One `π(u),π(v)` row per pair, exact fractions, lexicographic pair order.
pub fn pi_csv(r: &WordRelation) -> Result<String> {
    let alphabets = r.groupoid().alphabets();
    let mut out = String::from("pi_u,pi_v\n");
    for a in r.pairs() {
        let u = pi_coordinate_mixed(&a.0, alphabets)?;
        let v = pi_coordinate_mixed(&a.1, alphabets)?;
        let _ = writeln!(out, "{u},{v}");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{order_from_comparator, Comparator};
    use crate::scalar::complex_rational;

    #[test]
    fn relation_round_trip() {
        let p = PairSet::upper_triangular(3);
        let text = to_json(&RelationJson::from_pairs(&p));
        let back: RelationJson = from_json(&text).unwrap();
        assert_eq!(back.to_pairs().unwrap(), p);
    }

    #[test]
    fn matrix_round_trip() {
        let mut m = Matrix::<ComplexRational>::zeros(2);
        m.set(1, 2, complex_rational(-3, 4, 1, 7));
        let j = MatrixJson::from_matrix(&m).unwrap();
        assert_eq!(j.entries[0][1], [-3, 4, 1, 7]);
        let back: MatrixJson = from_json(&to_json(&j)).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
        let bad = MatrixJson {
            n: 1,
            entries: vec![vec![[1, 0, 0, 1]]],
        };
        assert!(matches!(bad.to_matrix(), Err(Error::Encoding(_))));
    }

    #[test]
    fn malformed_json_is_an_encoding_error() {
        assert!(matches!(
            from_json::<RelationJson>("{\"n\": 2"),
            Err(Error::Encoding(_))
        ));
    }

    #[test]
    fn depth_one_csv() {
        let g = TailGroupoid::uniform(2, 1).unwrap();
        let p = order_from_comparator(&g, &Comparator::Lex);
        assert_eq!(pi_csv(&p).unwrap(), "pi_u,pi_v\n0,0\n0,1/2\n1/2,1/2\n");
    }

    #[test]
    fn dyadic_generator_survives_json() {
        let g = TailGroupoid::uniform(2, 2).unwrap();
        let e1 = g.basis_gset(&Word::from([1]), &Word::from([2])).unwrap();
        let e2 = GSet::singleton(Arrow::new([1, 1], [1, 2]));
        let f = DyadicFunction::new(2, [(e1, Dyadic::pow2_inv(1)), (e2, Dyadic::new(-3, 3))]).unwrap();
        let j: DyadicFunctionJson = from_json(&to_json(&DyadicFunctionJson::from_function(&f).unwrap())).unwrap();
        assert_eq!(j.terms[1].num, -3);
        assert!(j.to_function(2).unwrap().same_function(&f));
        assert!(DyadicFunctionJson { terms: vec![] }.to_function(3).unwrap().is_zero());
    }

    #[test]
    fn gset_json_rejects_non_injective_pairs() {
        let j = GSetJson {
            depth: 1,
            pairs: vec![[vec![1], vec![2]], [vec![1], vec![1]]],
        };
        assert!(matches!(j.to_gset(), Err(Error::NotAGSet(_))));
        let g = TailGroupoid::uniform(2, 1).unwrap();
        assert!(j.to_relation(&g).is_ok());
        let deeper = TailGroupoid::uniform(2, 2).unwrap();
        assert!(matches!(j.to_relation(&deeper), Err(Error::DepthMismatch { .. })));
    }

    #[test]
    fn dot_output() {
        let p = PairSet::upper_triangular(2);
        assert_eq!(to_dot("P", &p), "digraph P {\n  1;\n  2;\n  1 -> 2;\n}\n");
    }
}
