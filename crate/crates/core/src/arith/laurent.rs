use alloc::collections::BTreeMap;
use core::fmt;

use num_traits::{One, Signed, Zero};

use super::{Coeff, Rational};

/// Finite Laurent polynomial in `z` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl ZLaurent {
    pub fn zero() -> Self {
        ZLaurent::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// `c * z^power`.
    pub fn monomial(power: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(power, c);
        }
        ZLaurent { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut out = ZLaurent::zero();
        for (p, c) in terms {
            out = out.add(&ZLaurent::monomial(p, c));
        }
        out
    }

    pub fn coefficient(&self, power: i64) -> Rational {
        self.terms
            .get(&power)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms in increasing `z`-power order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(&p, c)| (p, c))
    }

    pub fn min_power(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        ZLaurent {
            terms: self
                .terms
                .iter()
                .map(|(&p, c)| (p + k, c.clone()))
                .collect(),
        }
    }

    /// Exact division by the monomial `c * z^power`.
    pub fn div_monomial(&self, power: i64, c: &Rational) -> Self {
        assert!(!c.is_zero(), "division by zero monomial");
        ZLaurent {
            terms: self
                .terms
                .iter()
                .map(|(&p, a)| (p - power, a / c))
                .collect(),
        }
    }
}

impl Coeff for ZLaurent {
    fn zero() -> Self {
        ZLaurent::zero()
    }

    fn one() -> Self {
        ZLaurent::constant(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&p, c) in &other.terms {
            let slot = terms.entry(p).or_insert_with(Rational::zero);
            *slot += c;
            if slot.is_zero() {
                terms.remove(&p);
            }
        }
        ZLaurent { terms }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<i64, Rational> = BTreeMap::new();
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                *terms.entry(pa + pb).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        ZLaurent { terms }
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return ZLaurent::zero();
        }
        ZLaurent {
            terms: self.terms.iter().map(|(&p, c)| (p, c * r)).collect(),
        }
    }
}

impl From<Rational> for ZLaurent {
    fn from(c: Rational) -> Self {
        ZLaurent::constant(c)
    }
}

impl fmt::Display for ZLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&p, c)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let magnitude = c.abs();
            match p {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}*")?;
                    }
                    if p == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^({p})")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use alloc::format;
    use proptest::prelude::*;

    #[test]
    fn monomials_and_shift() {
        let a = ZLaurent::monomial(-2, rat(3, 4));
        assert_eq!(a.shift(3), ZLaurent::monomial(1, rat(3, 4)));
        assert_eq!(a.coefficient(-2), rat(3, 4));
        assert_eq!(a.coefficient(0), int(0));
        assert!(ZLaurent::monomial(5, int(0)).is_zero());
        let b = ZLaurent::from_terms([(1, int(2)), (-1, int(-1))]);
        assert_eq!(format!("{b}"), "2*z - z^(-1)");
        assert_eq!(
            b.div_monomial(1, &int(2)),
            ZLaurent::from_terms([(0, int(1)), (-2, rat(-1, 2))])
        );
    }

    fn arb_laurent() -> impl Strategy<Value = ZLaurent> {
        prop::collection::vec((-4i64..4, -6i64..7, 1i64..5), 0..5)
            .prop_map(|raw| ZLaurent::from_terms(raw.into_iter().map(|(p, n, d)| (p, rat(n, d)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        }
    }
}
