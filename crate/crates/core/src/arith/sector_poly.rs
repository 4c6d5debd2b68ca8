use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{uint, Coeff, Rational, ZLaurent};
use crate::error::{Error, Result};

/// An element `sum_{p <= cap} c_p P^p` of `C[P]/(P^(cap+1))`.
///
/// This is the cohomology of one sector `P(V^f)` with `cap = dim_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorPoly<C> {
    cap: usize,
    coeffs: Vec<C>,
}

impl<C: Coeff> SectorPoly<C> {
    pub fn zero(cap: usize) -> Self {
        SectorPoly {
            cap,
            coeffs: vec![C::zero(); cap + 1],
        }
    }

    pub fn one(cap: usize) -> Self {
        Self::monomial(cap, 0, C::one())
    }

    /// `c * P^p`, which is zero when `p > cap`.
    pub fn monomial(cap: usize, p: usize, c: C) -> Self {
        let mut out = Self::zero(cap);
        if p <= cap {
            out.coeffs[p] = c;
        }
        out
    }

    /// Builds from `c_0, c_1, ...`; powers above `cap` are discarded.
    pub fn from_coeffs(cap: usize, coeffs: Vec<C>) -> Self {
        let mut out = Self::zero(cap);
        for (slot, c) in out.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        out
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, p: usize) -> &C {
        &self.coeffs[p]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// Lowest power of `P` with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check_cap(&self, other: &Self) -> Result<()> {
        if self.cap != other.cap {
            return Err(Error::CapMismatch {
                left: self.cap,
                right: other.cap,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_cap(other)?;
        Ok(SectorPoly {
            cap: self.cap,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(C::neg)
    }

    /// Truncated product; caps must agree.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_cap(other)?;
        let mut coeffs = vec![C::zero(); self.cap + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=self.cap - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(SectorPoly {
            cap: self.cap,
            coeffs,
        })
    }

    /// Multiplies every coefficient by the scalar `c`.
    pub fn scale_by(&self, c: &C) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|a| a.scale(r))
    }

    /// Multiplies by `P^k`.
    pub fn shift_p(&self, k: usize) -> Self {
        let mut out = Self::zero(self.cap);
        for (p, c) in self.coeffs.iter().enumerate() {
            if p + k <= self.cap {
                out.coeffs[p + k] = c.clone();
            }
        }
        out
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SectorPoly<D> {
        SectorPoly {
            cap: self.cap,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Product of an iterator of factors, starting from `1`.
    pub fn product<'a, I>(cap: usize, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Self>,
        C: 'a,
    {
        factors
            .into_iter()
            .try_fold(Self::one(cap), |acc, f| acc.mul(f))
    }
}

/// The linear factor `a P + b z` in the sector ring of the given cap.
pub fn linear_factor(cap: usize, a: &Rational, b: &Rational) -> SectorPoly<ZLaurent> {
    SectorPoly::from_coeffs(
        cap,
        vec![
            ZLaurent::monomial(1, b.clone()),
            ZLaurent::constant(a.clone()),
        ],
    )
}

/// Expansion of `1/(w P + b z)` modulo `P^(cap+1)`:
/// `sum_p (-w)^p b^(-p-1) z^(-p-1) P^p`.
pub fn expand_reciprocal_factor(w: u64, b: &Rational, cap: usize) -> Result<SectorPoly<ZLaurent>> {
    if b.is_zero() {
        return Err(Error::ZeroFactor);
    }
    let ratio = -uint(w) / b;
    let mut coeff = b.recip();
    let mut coeffs = Vec::with_capacity(cap + 1);
    for p in 0..=cap {
        coeffs.push(ZLaurent::monomial(-(p as i64) - 1, coeff.clone()));
        coeff *= &ratio;
    }
    Ok(SectorPoly { cap, coeffs })
}

impl SectorPoly<ZLaurent> {
    /// Coefficient of `z^power`: one rational per power of `P`.
    pub fn z_coefficient(&self, power: i64) -> Vec<Rational> {
        self.coeffs.iter().map(|c| c.coefficient(power)).collect()
    }

    pub fn max_z_power(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(ZLaurent::max_power).max()
    }

    pub fn min_z_power(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(ZLaurent::min_power).min()
    }

    /// Multiplies by `z^k`.
    pub fn shift_z(&self, k: i64) -> Self {
        self.map(|c| c.shift(k))
    }
}
