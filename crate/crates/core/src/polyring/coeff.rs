use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::int::Int;

pub type Rational = BigRational;

/// Exact scalar ring usable as polynomial coefficients.
pub trait Coeff:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Zero + One + Send + Sync + 'static
{
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_int(v: &Int) -> Self;
    fn to_rational(&self) -> Rational;
    /// `None` when the value is not representable (a non-integer for `Int`).
    fn from_rational(r: &Rational) -> Option<Self>;
    fn is_negative(&self) -> bool;
    /// Exact quotient, `None` if the division leaves the ring.
    fn div_exact_ref(&self, other: &Self) -> Option<Self>;

    fn from_i64(v: i64) -> Self {
        Self::from_int(&Int::from(v))
    }

    fn is_one_value(&self) -> bool {
        *self == Self::one()
    }
}

impl Coeff for Int {
    fn add_ref(&self, other: &Int) -> Int {
        self + other
    }
    fn sub_ref(&self, other: &Int) -> Int {
        self - other
    }
    fn mul_ref(&self, other: &Int) -> Int {
        self * other
    }
    fn neg_ref(&self) -> Int {
        -self.clone()
    }
    fn from_int(v: &Int) -> Int {
        v.clone()
    }
    fn to_rational(&self) -> Rational {
        Rational::from_integer(self.to_bigint())
    }
    fn from_rational(r: &Rational) -> Option<Int> {
        r.is_integer().then(|| Int::from(r.to_integer()))
    }
    fn is_negative(&self) -> bool {
        Int::is_negative(self)
    }
    fn div_exact_ref(&self, other: &Int) -> Option<Int> {
        self.div_exact(other)
    }
}

impl Coeff for Rational {
    fn add_ref(&self, other: &Rational) -> Rational {
        self + other
    }
    fn sub_ref(&self, other: &Rational) -> Rational {
        self - other
    }
    fn mul_ref(&self, other: &Rational) -> Rational {
        self * other
    }
    fn neg_ref(&self) -> Rational {
        -self
    }
    fn from_int(v: &Int) -> Rational {
        Rational::from_integer(v.to_bigint())
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    fn from_rational(r: &Rational) -> Option<Rational> {
        Some(r.clone())
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn div_exact_ref(&self, other: &Rational) -> Option<Rational> {
        (!other.is_zero()).then(|| self / other)
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
