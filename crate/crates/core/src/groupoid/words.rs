//! Finite words over level alphabets: prefixes of points of the Cantor
//! space `[r_1] × [r_2] × ⋯`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::tower::EmbeddingKind;

/// A multi-index `(x_1, …, x_k)` with 1-based letters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix(&self, from: usize) -> Word {
        Word(self.0[from..].to_vec())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn concat(&self, tail: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&tail.0);
        Word(letters)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Word(letters)
    }
}

impl<const N: usize> From<[usize; N]> for Word {
    fn from(letters: [usize; N]) -> Self {
        Word(letters.to_vec())
    }
}

/// Alphabet sizes `r_1, r_2, …`; words of depth `k` use the first `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabets(Vec<usize>);

impl Alphabets {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::ZeroSize);
        }
        Ok(Alphabets(sizes))
    }

    /// `r` repeated `depth` times.
    pub fn uniform(r: usize, depth: usize) -> Self {
        Alphabets::new(vec![r; depth]).expect("positive alphabet")
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn max_depth(&self) -> usize {
        self.0.len()
    }

    /// `r_1 ⋯ r_depth`.
    pub fn word_count(&self, depth: usize) -> usize {
        self.0[..depth].iter().product()
    }

    /// Sizes for letters `from+1 ..= to`.
    pub fn range(&self, from: usize, to: usize) -> Alphabets {
        Alphabets(self.0[from..to].to_vec())
    }

    pub fn check_depth(&self, depth: usize, limits: &Limits) -> Result<()> {
        if depth == 0 || depth > self.max_depth() {
            return Err(Error::DepthMismatch {
                expected: self.max_depth(),
                found: depth,
            });
        }
        let count = self.word_count(depth);
        if count > limits.max_words {
            return Err(Error::BoundExceeded {
                what: "words at truncation depth",
                value: count,
                limit: limits.max_words,
            });
        }
        Ok(())
    }

    pub fn validate(&self, word: &Word) -> Result<()> {
        if word.depth() > self.max_depth() {
            return Err(Error::DepthMismatch {
                expected: self.max_depth(),
                found: word.depth(),
            });
        }
        for (position, (&letter, &size)) in word.0.iter().zip(&self.0).enumerate() {
            if letter == 0 || letter > size {
                return Err(Error::LetterOutOfRange {
                    position: position + 1,
                    letter,
                    size,
                });
            }
        }
        Ok(())
    }

    /// All words of the given depth, in lexicographic order.
    pub fn words(&self, depth: usize) -> Vec<Word> {
        let mut out = vec![Word(Vec::new())];
        for &r in &self.0[..depth] {
            out = out
                .into_iter()
                .flat_map(|w| (1..=r).map(move |x| w.concat(&Word(vec![x]))))
                .collect();
        }
        out
    }
}

/// Lexicographic order: the first differing coordinate decides.
pub fn lex_leq(i: &Word, j: &Word) -> Result<bool> {
    same_depth(i, j)?;
    Ok(match i.0.iter().zip(&j.0).find(|(a, b)| a != b) {
        None => true,
        Some((a, b)) => a < b,
    })
}

/// Reverse lexicographic order: the rightmost differing coordinate decides.
pub fn revlex_leq(i: &Word, j: &Word) -> Result<bool> {
    same_depth(i, j)?;
    Ok(match i.0.iter().zip(&j.0).rev().find(|(a, b)| a != b) {
        None => true,
        Some((a, b)) => a < b,
    })
}

fn same_depth(i: &Word, j: &Word) -> Result<()> {
    if i.depth() != j.depth() {
        return Err(Error::DepthMismatch {
            expected: i.depth(),
            found: j.depth(),
        });
    }
    Ok(())
}

/// How the words of each depth are ordered, i.e. which triangular algebra
/// sits at each level.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Comparator {
    Lex,
    RevLex,
    /// Per-level embedding kinds of a tower: a refinement step appends a
    /// least significant letter, a standard step a most significant one.
    Alternation(Vec<EmbeddingKind>),
}

impl Comparator {
    /// The 1-based position of `word` in the level numbering this
    /// comparator induces: `T_{n_k}` in these indices is the order.
    pub fn index(&self, word: &Word, alphabets: &Alphabets) -> usize {
        let r = alphabets.sizes();
        let x = word.letters();
        let mut idx = 0usize;
        let mut block = 1usize;
        for (m, (&letter, &size)) in x.iter().zip(r).enumerate() {
            let step_is_standard = match self {
                Comparator::Lex => false,
                Comparator::RevLex => true,
                Comparator::Alternation(kinds) => m > 0 && kinds.get(m - 1) == Some(&EmbeddingKind::Standard),
            };
            if m == 0 {
                idx = letter - 1;
            } else if step_is_standard {
                idx += (letter - 1) * block;
            } else {
                idx = idx * size + (letter - 1);
            }
            block *= size;
        }
        idx + 1
    }

    pub fn word_at(&self, index: usize, depth: usize, alphabets: &Alphabets) -> Word {
        alphabets
            .words(depth)
            .into_iter()
            .find(|w| self.index(w, alphabets) == index)
            .expect("index in range")
    }

    pub fn compare(&self, u: &Word, v: &Word, alphabets: &Alphabets) -> Result<Ordering> {
        same_depth(u, v)?;
        Ok(match self {
            Comparator::Lex => {
                if u == v {
                    Ordering::Equal
                } else if lex_leq(u, v)? {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            Comparator::RevLex => {
                if u == v {
                    Ordering::Equal
                } else if revlex_leq(u, v)? {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            Comparator::Alternation(_) => self.index(u, alphabets).cmp(&self.index(v, alphabets)),
        })
    }

    pub fn leq(&self, u: &Word, v: &Word, alphabets: &Alphabets) -> Result<bool> {
        Ok(self.compare(u, v, alphabets)? != Ordering::Greater)
    }
}

/// `π(x) = Σ_k (x_k − 1) r^{-k}`, truncated to the word's length.
pub fn pi_coordinate(x: &Word, r: usize) -> Result<BigRational> {
    pi_coordinate_mixed(x, &Alphabets::uniform(r, x.depth()))
}

/// `π` for mixed alphabets: `Σ_k (x_k − 1) / (r_1 ⋯ r_k)`.
pub fn pi_coordinate_mixed(x: &Word, alphabets: &Alphabets) -> Result<BigRational> {
    alphabets.validate(x)?;
    let mut total = BigRational::zero();
    let mut den = BigInt::from(1);
    for (&letter, &r) in x.letters().iter().zip(alphabets.sizes()) {
        den *= r;
        total += BigRational::new(BigInt::from(letter - 1), den.clone());
    }
    Ok(total)
}
