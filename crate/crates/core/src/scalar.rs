//! Scalar types for matrices and groupoid functions.
//!
//! Everything numeric in the crate is generic over [`Scalar`]: a commutative
//! ring element with a conjugation. Exact work uses [`ComplexRational`] for
//! matrices and [`Dyadic`] for generator coefficients; `f64` is available
//! for quick experiments.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, Zero};

pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn conj(&self) -> Self;

    /// `|x|² == 1`.
    fn is_unimodular(&self) -> bool {
        (self.clone() * self.conj()).is_one()
    }
}

macro_rules! real_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn conj(&self) -> Self {
                self.clone()
            }
        }
    )*};
}

real_scalar!(f32, f64, i64, BigInt, BigRational, Ratio<i64>);

impl<T> Scalar for Complex<T>
where
    T: Scalar + Num,
{
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
}

pub type ComplexRational = Complex<BigRational>;

/// Exact rational complex number from two `num/den` pairs.
pub fn complex_rational(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> ComplexRational {
    Complex::new(
        BigRational::new(re_num.into(), re_den.into()),
        BigRational::new(im_num.into(), im_den.into()),
    )
}

/// A dyadic rational `num / 2^log2_den`, kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    log2_den: u32,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, log2_den: u32) -> Self {
        let mut d = Dyadic {
            num: num.into(),
            log2_den,
        };
        d.normalize();
        d
    }

    /// `2^-k`.
    pub fn pow2_inv(k: u32) -> Self {
        Dyadic::new(1, k)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn log2_denominator(&self) -> u32 {
        self.log2_den
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.log2_den as usize)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.log2_den = 0;
            return;
        }
        let shift = self
            .num
            .trailing_zeros()
            .map_or(0, |z| z.min(self.log2_den as u64) as u32);
        if shift > 0 {
            self.num >>= shift as usize;
            self.log2_den -= shift;
        }
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let d = self.log2_den.max(other.log2_den);
        let a = &self.num << (d - self.log2_den) as usize;
        let b = &other.num << (d - other.log2_den) as usize;
        (a, b, d)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log2_den == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.log2_den as usize)
        }
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let (a, b, d) = self.aligned(&rhs);
        Dyadic::new(a + b, d)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        let (a, b, d) = self.aligned(&rhs);
        Dyadic::new(a - b, d)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        Dyadic::new(self.num * rhs.num, self.log2_den + rhs.log2_den)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            log2_den: self.log2_den,
        }
    }
}

impl Zero for Dyadic {
    fn zero() -> Self {
        Dyadic::new(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Dyadic {
    fn one() -> Self {
        Dyadic::new(1, 0)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl Scalar for Dyadic {
    fn conj(&self) -> Self {
        self.clone()
    }

    fn is_unimodular(&self) -> bool {
        self.log2_den == 0 && self.num.abs().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dyadic_normal_form() {
        assert_eq!(Dyadic::new(4, 3), Dyadic::new(1, 1));
        assert_eq!(Dyadic::new(0, 7), Dyadic::zero());
        assert_eq!(Dyadic::new(6, 0).log2_denominator(), 0);
        assert_eq!(Dyadic::new(3, 2).to_string(), "3/4");
        assert_eq!(Dyadic::pow2_inv(3).to_rational(), BigRational::new(1.into(), 8.into()));
    }

    #[test]
    fn complex_conjugation() {
        let z = complex_rational(1, 2, 3, 4);
        assert_eq!(z.conj(), complex_rational(1, 2, -3, 4));
        assert!(complex_rational(3, 5, 4, 5).is_unimodular());
        assert!(!complex_rational(1, 2, 1, 2).is_unimodular());
    }

    fn dyadic() -> impl Strategy<Value = Dyadic> {
        (-1000i64..1000, 0u32..12).prop_map(|(n, k)| Dyadic::new(n, k))
    }

    proptest! {
        #[test]
        fn dyadic_matches_rational_arithmetic(a in dyadic(), b in dyadic()) {
            prop_assert_eq!((a.clone() + b.clone()).to_rational(), a.to_rational() + b.to_rational());
            prop_assert_eq!((a.clone() - b.clone()).to_rational(), a.to_rational() - b.to_rational());
            prop_assert_eq!((a.clone() * b.clone()).to_rational(), a.to_rational() * b.to_rational());
            prop_assert_eq!(a.cmp(&b), a.to_rational().cmp(&b.to_rational()));
        }
    }
}
