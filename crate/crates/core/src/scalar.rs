//! Exact scalar fields.
//!
//! Everything above this module is generic over [`Field`]. Two fields ship:
//! plain rationals and [`crate::coeff::Coefficient`], rational functions in
//! declared parameter symbols.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// An exact field of characteristic zero.
///
/// The by-value operators come from `num_traits`/`std::ops`; the `*_ref`
/// methods exist so hot loops can avoid clones, and default to the
/// clone-based forms.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse. Panics on zero, like integer division.
    fn inv(&self) -> Self;

    fn from_i64(n: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    /// The value as a rational, if it has no parameter dependence.
    fn to_rational(&self) -> Option<Rational>;

    fn add_ref(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }

    fn sub_ref(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }

    fn mul_ref(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }

    fn div_ref(&self, o: &Self) -> Self {
        self.mul_ref(&o.inv())
    }

    fn neg_ref(&self) -> Self {
        -self.clone()
    }

    fn half() -> Self {
        Self::from_i64(2).inv()
    }

    /// True when the leading part of the value is "negative" in the
    /// canonical sense used for printing and sign normalization.
    fn is_negative(&self) -> bool;
}

impl Field for Rational {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }

    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }

    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }

    fn div_ref(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "division by zero");
        self / o
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_field_ops() {
        let a = rat(1, 2);
        let b = rat(-3, 4);
        assert_eq!(a.add_ref(&b), rat(-1, 4));
        assert_eq!(a.div_ref(&b), rat(-2, 3));
        assert_eq!(b.inv(), rat(-4, 3));
        assert!(Field::is_negative(&b));
        assert_eq!(<Rational as Field>::half(), rat(1, 2));
    }

    #[test]
    #[should_panic]
    fn inverse_of_zero_panics() {
        let _ = Rational::zero().inv();
    }
}
