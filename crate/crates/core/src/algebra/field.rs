use std::fmt::{Debug, Display};

use num::{BigInt, BigRational, One, Signed, Zero};

use super::unipoly::UniPoly;

/// Exact rational number.
pub type Rational = BigRational;

/// Coefficient field for polynomials: exact, totally ordered (for canonical output) and thread-safe.
pub trait Field: Clone + Eq + Ord + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn recip(&self) -> Self;
    fn over(&self, o: &Self) -> Self {
        self.times(&o.recip())
    }
    fn from_rational(q: &Rational) -> Self;
    fn from_int(i: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(i)))
    }
    /// Roots of `p` lying in this field, sorted and without repetition.
    fn roots(p: &UniPoly<Self>) -> Vec<Self>;
    /// Projective height of a tuple of field elements (not all zero).
    fn tuple_height(v: &[Self]) -> usize;
    /// Whether the element is a constant (lies in Q).
    fn is_constant(&self) -> bool;
    /// Monic gcd of two polynomials over this field.
    fn poly_gcd(a: &UniPoly<Self>, b: &UniPoly<Self>) -> UniPoly<Self> {
        a.euclid_gcd(b)
    }
    fn poly_resultant(a: &UniPoly<Self>, b: &UniPoly<Self>) -> Self {
        a.euclid_resultant(b)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn recip(&self) -> Self {
        assert!(!Zero::is_zero(self), "division by zero");
        num::traits::Inv::inv(self)
    }
    fn over(&self, o: &Self) -> Self {
        assert!(!Zero::is_zero(o), "division by zero");
        self / o
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn roots(p: &UniPoly<Self>) -> Vec<Self> {
        super::roots::rational_roots(p)
    }
    fn tuple_height(_: &[Self]) -> usize {
        0
    }
    fn is_constant(&self) -> bool {
        true
    }
    fn poly_gcd(a: &UniPoly<Self>, b: &UniPoly<Self>) -> UniPoly<Self> {
        super::qpoly::gcd(a, b)
    }
    fn poly_resultant(a: &UniPoly<Self>, b: &UniPoly<Self>) -> Self {
        super::qpoly::resultant(a, b)
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Canonical text of a rational: `p` or `p/q`.
pub fn rat_str(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat_abs(q: &Rational) -> Rational {
    q.abs()
}
