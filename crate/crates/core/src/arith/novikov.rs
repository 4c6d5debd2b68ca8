use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{is_negative, parse_rational, Coeff, Rational};
use crate::error::{Error, Result};

/// A finite exact sum `sum c_e Q^e` with rational exponents on a `1/L` lattice.
///
/// Exponents are stored as integers scaled by `lattice`. Values built on
/// different lattices combine on the lcm lattice. Equality compares the
/// represented value, not the lattice it happens to be stored on.
///
/// Negative exponents are rejected unless the value was built through one of
/// the `laurent_*` constructors (or derived from such a value); this is the
/// inverted-`Q` mode used while reducing powers of `P`.
#[derive(Clone, Debug)]
pub struct NovikovScalar {
    lattice: u64,
    terms: BTreeMap<i64, Rational>,
    allow_negative: bool,
}

impl NovikovScalar {
    pub fn zero() -> Self {
        NovikovScalar {
            lattice: 1,
            terms: BTreeMap::new(),
            allow_negative: false,
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        NovikovScalar {
            lattice: 1,
            terms,
            allow_negative: false,
        }
    }

    /// `c * Q^e` with `e >= 0`.
    pub fn monomial(c: Rational, e: &Rational) -> Result<Self> {
        if is_negative(e) {
            return Err(Error::NegativeExponent(e.clone()));
        }
        Ok(Self::laurent_monomial(c, e).with_flag(false))
    }

    pub fn q_power(e: &Rational) -> Result<Self> {
        Self::monomial(Rational::one(), e)
    }

    /// `c * Q^e` for any sign of `e`; the result allows negative exponents.
    pub fn laurent_monomial(c: Rational, e: &Rational) -> Self {
        let lattice = den_u64(e);
        let key = scaled_key(e, lattice);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        NovikovScalar {
            lattice,
            terms,
            allow_negative: true,
        }
    }

    fn with_flag(mut self, allow_negative: bool) -> Self {
        self.allow_negative = allow_negative;
        self
    }

    /// Builds a scalar from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc = acc.add(&Self::monomial(c, &e)?);
        }
        Ok(acc)
    }

    pub fn lattice(&self) -> u64 {
        self.lattice
    }

    pub fn allows_negative_exponents(&self) -> bool {
        self.allow_negative
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &Rational)> + '_ {
        let lattice = self.lattice;
        self.terms
            .iter()
            .map(move |(&k, c)| (Rational::new(BigInt::from(k), BigInt::from(lattice)), c))
    }

    pub fn coefficient(&self, e: &Rational) -> Rational {
        let scaled = e * Rational::from_integer(BigInt::from(self.lattice));
        if !scaled.is_integer() {
            return Rational::zero();
        }
        let key = i64::try_from(scaled.to_integer()).expect("exponent out of range");
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&0).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exponent(&self) -> Option<Rational> {
        self.terms().next().map(|(e, _)| e)
    }

    pub fn max_exponent(&self) -> Option<Rational> {
        self.terms().last().map(|(e, _)| e)
    }

    /// `Some((e, c))` when the value is the single monomial `c Q^e`.
    pub fn as_monomial(&self) -> Option<(Rational, Rational)> {
        if self.terms.len() == 1 {
            self.terms().next().map(|(e, c)| (e, c.clone()))
        } else {
            None
        }
    }

    pub fn is_effective(&self) -> bool {
        self.terms.keys().all(|&k| k >= 0)
    }

    /// Drops the inverted-`Q` flag, failing if a negative exponent remains.
    pub fn into_effective(self) -> Result<Self> {
        if let Some(e) = self.min_exponent().filter(is_negative) {
            return Err(Error::NegativeExponent(e));
        }
        Ok(self.with_flag(false))
    }

    /// Re-expresses the value on a finer lattice `lattice`, which must be a
    /// multiple of the current one.
    pub fn on_lattice(&self, lattice: u64) -> Self {
        assert!(
            lattice.is_multiple_of(self.lattice),
            "lattice {lattice} is not a multiple of {}",
            self.lattice
        );
        let factor = (lattice / self.lattice) as i64;
        NovikovScalar {
            lattice,
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k * factor, c.clone()))
                .collect(),
            allow_negative: self.allow_negative,
        }
    }

    /// Same value on the smallest lattice that carries its exponents.
    pub fn canonical(&self) -> Self {
        let g = self
            .terms
            .keys()
            .fold(self.lattice as i64, |g, &k| g.gcd(&k))
            .unsigned_abs()
            .max(1);
        NovikovScalar {
            lattice: self.lattice / g,
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k / g as i64, c.clone()))
                .collect(),
            allow_negative: self.allow_negative,
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self, u64) {
        let lattice = self.lattice.lcm(&other.lattice);
        (self.on_lattice(lattice), other.on_lattice(lattice), lattice)
    }

    /// Multiplies by `Q^e`. A negative shift switches on inverted-`Q` mode.
    pub fn shift(&self, e: &Rational) -> Self {
        let mono = Self::laurent_monomial(Rational::one(), e);
        let mut out = self.mul(&mono);
        out.allow_negative = self.allow_negative || is_negative(e);
        out
    }

    /// Keeps the terms with exponent `<= max`.
    pub fn truncate(&self, max: &Rational) -> Self {
        let mut out = self.clone();
        out.terms
            .retain(|&k, _| Rational::new(BigInt::from(k), BigInt::from(self.lattice)) <= *max);
        out
    }

    /// Multiplicative inverse modulo terms of exponent `> max`.
    ///
    /// Requires an effective value with nonzero constant term.
    pub fn inverse_truncated(&self, max: &Rational) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() || !self.is_effective() {
            return Err(Error::NotInvertible);
        }
        let inv_c0 = c0.recip();
        // x^{-1} = c0^{-1} * sum_k (-(x - c0)/c0)^k, and (x - c0) has positive order.
        let ratio = self
            .add(&Self::constant(-c0.clone()))
            .scale(&-inv_c0.clone());
        let mut result = Self::constant(inv_c0.clone());
        let mut term = Self::constant(inv_c0);
        loop {
            term = term.mul(&ratio).truncate(max);
            if term.is_zero() {
                break;
            }
            result = result.add(&term);
        }
        Ok(result)
    }

    pub fn map_coefficients(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .map(|(&k, c)| (k, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        out
    }
}

fn den_u64(e: &Rational) -> u64 {
    u64::try_from(e.denom()).expect("exponent denominator out of range")
}

fn scaled_key(e: &Rational, lattice: u64) -> i64 {
    let scaled = e * Rational::from_integer(BigInt::from(lattice));
    debug_assert!(scaled.is_integer());
    i64::try_from(scaled.to_integer()).expect("exponent out of range")
}

impl Coeff for NovikovScalar {
    fn zero() -> Self {
        NovikovScalar::zero()
    }

    fn one() -> Self {
        NovikovScalar::one()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let (mut a, b, _) = self.aligned(other);
        for (k, c) in b.terms {
            let slot = a.terms.entry(k).or_insert_with(Rational::zero);
            *slot += c;
            if slot.is_zero() {
                a.terms.remove(&k);
            }
        }
        a.allow_negative = self.allow_negative || other.allow_negative;
        a
    }

    fn mul(&self, other: &Self) -> Self {
        let (a, b, lattice) = self.aligned(other);
        let mut terms: BTreeMap<i64, Rational> = BTreeMap::new();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                *terms.entry(ka + kb).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        NovikovScalar {
            lattice,
            terms,
            allow_negative: self.allow_negative || other.allow_negative,
        }
    }

    fn scale(&self, r: &Rational) -> Self {
        self.map_coefficients(|c| c * r)
    }
}

impl PartialEq for NovikovScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.lattice == other.lattice {
            return self.terms == other.terms;
        }
        self.terms.len() == other.terms.len()
            && self
                .terms()
                .zip(other.terms())
                .all(|((ea, ca), (eb, cb))| ea == eb && ca == cb)
    }
}

impl Eq for NovikovScalar {}

impl From<Rational> for NovikovScalar {
    fn from(c: Rational) -> Self {
        NovikovScalar::constant(c)
    }
}

/// Canonical text form: `c1*Q^(e1) + c2*Q^(e2) - ...`, increasing exponents,
/// unit coefficients and the exponent `1` elided, `0` for the zero scalar.
impl fmt::Display for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let magnitude = if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                c.abs()
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
                c.abs()
            };
            if e.is_zero() {
                write!(f, "{magnitude}")?;
                continue;
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            if e.is_one() {
                f.write_str("Q")?;
            } else {
                write!(f, "Q^({e})")?;
            }
        }
        Ok(())
    }
}

impl FromStr for NovikovScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty Novikov scalar".to_string()));
        }
        let mut acc = NovikovScalar::zero();
        for (negative, body) in split_terms(&compact)? {
            let (coeff, exponent) = parse_term(body)?;
            let coeff = if negative { -coeff } else { coeff };
            acc = acc.add(&NovikovScalar::laurent_monomial(coeff, &exponent));
        }
        acc.allow_negative = !acc.is_effective();
        Ok(acc)
    }
}

fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut negative = false;
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                if i == start {
                    if i != 0 {
                        return Err(Error::Parse(alloc::format!("dangling sign in {s:?}")));
                    }
                    negative = b == b'-';
                    start = i + 1;
                    continue;
                }
                out.push((negative, &s[start..i]));
                negative = b == b'-';
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 || start >= s.len() {
        return Err(Error::Parse(alloc::format!(
            "malformed Novikov scalar {s:?}"
        )));
    }
    out.push((negative, &s[start..]));
    Ok(out)
}

fn parse_term(body: &str) -> Result<(Rational, Rational)> {
    let Some(q_at) = body.find('Q') else {
        return Ok((parse_rational(body)?, Rational::zero()));
    };
    let (prefix, rest) = body.split_at(q_at);
    let coeff = match prefix {
        "" => Rational::one(),
        p => parse_rational(
            p.strip_suffix('*')
                .ok_or_else(|| Error::Parse(alloc::format!("expected '*' in {body:?}")))?,
        )?,
    };
    let exponent = match &rest[1..] {
        "" => Rational::one(),
        e => {
            let inner = e
                .strip_prefix("^(")
                .and_then(|e| e.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(alloc::format!("bad exponent in {body:?}")))?;
            parse_rational(inner)?
        }
    };
    Ok((coeff, exponent))
}
