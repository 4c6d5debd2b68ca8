//! Exact scalar and series arithmetic.
//!
//! No floating point appears anywhere in the crate. Scalars are
//! arbitrary-precision rationals; the two coefficient rings used on top of
//! them are [`NovikovScalar`] (finite sums of `c * Q^e` with `e` on a
//! `1/L` lattice) and [`ZLaurent`] (finite Laurent polynomials in `z`).
//! [`SectorPoly`] is the truncated ring `C[P]/(P^(cap+1))`.

mod laurent;
mod novikov;
mod sector_poly;

use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

pub use laurent::ZLaurent;
pub use novikov::NovikovScalar;
pub use num_rational::BigRational as Rational;
pub use sector_poly::{expand_reciprocal_factor, linear_factor, SectorPoly};

use crate::error::{Error, Result};

/// Builds the reduced rational `n/d`.
///
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn uint(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fractional part `<x> = x - floor(x)`, always in `[0, 1)`.
pub fn fract(x: &Rational) -> Rational {
    x - x.floor()
}

pub fn ceil_int(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

pub fn floor_int(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// Converts a small integer-valued rational to `i64`.
pub(crate) fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("integer exceeds i64")
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::Parse(alloc::format!("bad rational {s:?}")))
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// `b^e` for a rational base and a signed integer exponent.
pub fn pow_i(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), e.unsigned_abs() as usize)
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Coefficient ring of a [`SectorPoly`].
///
/// All operations are by reference and return fresh values; implementors
/// are immutable once built.
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;

    fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

pub(crate) fn is_negative(x: &Rational) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractional_parts() {
        assert_eq!(fract(&rat(7, 2)), rat(1, 2));
        assert_eq!(fract(&rat(-1, 3)), rat(2, 3));
        assert_eq!(fract(&int(4)), int(0));
        assert_eq!(ceil_int(&rat(7, 2)), BigInt::from(4));
        assert_eq!(ceil_int(&rat(-1, 2)), BigInt::from(0));
        assert_eq!(floor_int(&rat(-1, 2)), BigInt::from(-1));
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(alloc::format!("{}", rat(6, 4)), "3/2");
        assert_eq!(alloc::format!("{}", rat(4, 2)), "2");
        assert_eq!(alloc::format!("{}", rat(0, 5)), "0");
        assert_eq!(parse_rational(" 6/4 ").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn integer_powers() {
        assert_eq!(pow_i(&int(2), -3), rat(1, 8));
        assert_eq!(pow_i(&rat(2, 3), 2), rat(4, 9));
        assert_eq!(pow_i(&rat(5, 7), 0), int(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
