//! Minimal ring abstractions shared by series, polynomials and symbolic constants.

use rug::{Float, Rational};
use std::fmt::Debug;

/// A commutative ring whose elements can build their own zero and one.
///
/// Elements carry enough context (for example a float precision) to create
/// neighbours, so the constructors take `&self`.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Image of a rational number, using `self` only as context.
    fn embed(&self, r: &Rational) -> Self;

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.plus(other);
    }
}

/// A ring where nonzero elements are invertible.
pub trait Field: Ring {
    fn inverse(&self) -> Option<Self>;
}

/// Rings with context-free constants, so polynomials can be built from nothing.
pub trait ExactRing: Ring {
    fn zero() -> Self;
    fn one() -> Self;
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn one_like(&self) -> Self {
        Rational::from(1)
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn plus(&self, other: &Self) -> Self {
        Rational::from(self + other)
    }
    fn minus(&self, other: &Self) -> Self {
        Rational::from(self - other)
    }
    fn times(&self, other: &Self) -> Self {
        Rational::from(self * other)
    }
    fn negated(&self) -> Self {
        Rational::from(-self)
    }
    fn embed(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

impl Field for Rational {
    fn inverse(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(Rational::from(self.recip_ref()))
        }
    }
}

impl ExactRing for Rational {
    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
}

impl Ring for Float {
    fn zero_like(&self) -> Self {
        Float::with_val(self.prec(), 0)
    }
    fn one_like(&self) -> Self {
        Float::with_val(self.prec(), 1)
    }
    fn is_zero(&self) -> bool {
        Float::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        Float::with_val(self.prec().max(other.prec()), self + other)
    }
    fn minus(&self, other: &Self) -> Self {
        Float::with_val(self.prec().max(other.prec()), self - other)
    }
    fn times(&self, other: &Self) -> Self {
        Float::with_val(self.prec().max(other.prec()), self * other)
    }
    fn negated(&self) -> Self {
        Float::with_val(self.prec(), -self)
    }
    fn embed(&self, r: &Rational) -> Self {
        Float::with_val(self.prec(), r)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

impl Field for Float {
    fn inverse(&self) -> Option<Self> {
        if Float::is_zero(self) {
            None
        } else {
            Some(Float::with_val(self.prec(), self.recip_ref()))
        }
    }
}

/// Rational number from a small numerator and denominator.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

/// Rational number from an integer.
pub fn qi(n: i64) -> Rational {
    Rational::from(n)
}

/// A rational number that serializes as the string "n/d".
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatStr(pub Rational);

impl From<Rational> for RatStr {
    fn from(r: Rational) -> Self {
        RatStr(r)
    }
}

impl From<i64> for RatStr {
    fn from(n: i64) -> Self {
        RatStr(Rational::from(n))
    }
}

impl serde::Serialize for RatStr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for RatStr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.trim()
            .parse::<Rational>()
            .map(RatStr)
            .map_err(|e| serde::de::Error::custom(format!("invalid rational '{s}': {e}")))
    }
}
