//! Scalar traits shared by the generic containers.
//!
//! Everything exact in this crate is written against [`Ring`] (or [`Field`]
//! where division is needed). The concrete instantiations used by the
//! verifiers are `BigRational` (see [`crate::Rational`]), `BigInt` and the
//! machine integers; `f64` also implements the traits so that circuits can be
//! evaluated numerically when a floating estimate is all that is wanted.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

/// A commutative ring with identity.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
}

/// A ring with exact division by nonzero elements.
///
/// For integer types this is only used on quotients that are known to be
/// exact (Bareiss elimination), so truncating division is fine there.
pub trait ExactDiv: Ring {
    fn exact_div(&self, rhs: &Self) -> Self;
}

/// A field. `inv` must only be called on nonzero elements.
pub trait Field: ExactDiv {
    fn inv(&self) -> Self;
}

macro_rules! impl_int_ring {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }
        }
        impl ExactDiv for $t {
            fn exact_div(&self, rhs: &Self) -> Self {
                debug_assert!(self % rhs == 0, "inexact integer division");
                self / rhs
            }
        }
    )*};
}

impl_int_ring!(i64, i128);

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl ExactDiv for BigInt {
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl Ring for BigRational {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }
}

impl ExactDiv for BigRational {
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Ring for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl ExactDiv for f64 {
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl Field for f64 {
    fn inv(&self) -> Self {
        1.0 / self
    }
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Ratio::new(p, q))
        }
        None => Some(Ratio::from_integer(s.parse().ok()?)),
    }
}

/// Formats a rational as `"p/q"` with `q > 0`, always including the
/// denominator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Exact rational from a small integer fraction.
pub fn ratio(p: i64, q: i64) -> BigRational {
    Ratio::new(BigInt::from(p), BigInt::from(q))
}

/// Lossy conversion used only for reporting.
pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        let r = ratio(-6, 4);
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(parse_rational("-3/2"), Some(r));
        assert_eq!(parse_rational("5"), Some(ratio(5, 1)));
        assert_eq!(parse_rational("0/7"), Some(ratio(0, 1)));
        assert_eq!(format_rational(&ratio(0, 9)), "0/1");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }
}
