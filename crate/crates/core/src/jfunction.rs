//! The small J-function of `P(w)` at `t = 0` and the second derivation of
//! the quantum ring from it.
//!
//! The degree-`d` term is
//! `T_d = z / prod_i prod_{0<b<=d w_i, <b>=<d w_i>} (w_i P + b z)`, living in
//! the cohomology of the sector `<d>`. On a degree-`d` term the operator
//! `z d/dt` acts as `P + d z`, so every differential operator in `t` used here
//! becomes a product of linear factors applied degree by degree.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arith::{
    expand_reciprocal_factor, int, linear_factor, uint, Coeff, NovikovScalar, Rational, SectorPoly,
    ZLaurent,
};
use crate::error::{Error, Result};
use crate::ring::{c_sequence, positive_steps, QuantumMatrix};
use crate::sector::{Inertia, OrbClass};

/// Linear factors `w P + b z` of the degree-`d` denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorSpec {
    pub factors: Vec<(u64, Rational)>,
}

impl DenominatorSpec {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

pub fn denominator_factors(inertia: &Inertia, d: &Rational) -> Result<DenominatorSpec> {
    inertia.degree_sector(d)?;
    let factors = inertia
        .weights()
        .iter()
        .flat_map(|wi| {
            positive_steps(&(d * uint(wi)))
                .into_iter()
                .map(move |b| (wi, b))
        })
        .collect();
    Ok(DenominatorSpec { factors })
}

/// All `d = k + f <= cap` with `k >= 0` an integer and `f` in the sector set,
/// increasing.
pub fn degrees_up_to(inertia: &Inertia, cap: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut k = Rational::zero();
    while &k <= cap {
        for s in inertia.sectors() {
            let d = &k + s.f();
            if &d <= cap {
                out.push(d);
            }
        }
        k += Rational::one();
    }
    out
}

/// One term of a series: the sector index of `<d>` and its coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JTerm {
    pub sector: usize,
    pub poly: SectorPoly<ZLaurent>,
}

/// `sum_d Q^{d + q_shift} T_d`, keyed by `d`.
///
/// The same shape carries the J-series, its images under the `D_j`
/// operators, and the I-series of a complete intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JSeries {
    inertia: Inertia,
    degree_cap: Rational,
    q_shift: Rational,
    terms: BTreeMap<Rational, JTerm>,
}

/// The I-series of a complete intersection has the same shape.
pub type ISeries = JSeries;

impl JSeries {
    pub fn from_terms(
        inertia: Inertia,
        degree_cap: Rational,
        terms: BTreeMap<Rational, JTerm>,
    ) -> Self {
        JSeries {
            inertia,
            degree_cap,
            q_shift: Rational::zero(),
            terms,
        }
    }

    pub fn inertia(&self) -> &Inertia {
        &self.inertia
    }

    pub fn degree_cap(&self) -> &Rational {
        &self.degree_cap
    }

    /// Offset added to every degree to get the power of `Q`.
    pub fn q_shift(&self) -> &Rational {
        &self.q_shift
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &JTerm)> {
        self.terms.iter()
    }

    pub fn term(&self, d: &Rational) -> Option<&JTerm> {
        self.terms.get(d)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies the degree-`d` term by `prod_r (P + (d - r) z)` for each
    /// root `r` and adds `shift` to the `Q`-exponent.
    pub fn apply_roots(&self, roots: &[Rational], shift: &Rational) -> Result<JSeries> {
        let mut terms = BTreeMap::new();
        for (d, term) in &self.terms {
            let cap = term.poly.cap();
            let factors: Vec<_> = roots
                .iter()
                .map(|r| linear_factor(cap, &int(1), &(d - r)))
                .collect();
            let poly = SectorPoly::product(cap, &factors)?.mul(&term.poly)?;
            terms.insert(
                d.clone(),
                JTerm {
                    sector: term.sector,
                    poly,
                },
            );
        }
        Ok(JSeries {
            inertia: self.inertia.clone(),
            degree_cap: self.degree_cap.clone(),
            q_shift: &self.q_shift + shift,
            terms,
        })
    }

    /// The coefficient of `z^power` as a class, with `Q`-exponents
    /// `d + q_shift`. Errors if an exponent is negative.
    pub fn z_coefficient(&self, power: i64) -> Result<OrbClass> {
        self.z_coefficient_where(power, |_| true)
    }

    /// As [`JSeries::z_coefficient`], restricted to degrees accepted by `keep`.
    pub fn z_coefficient_where(
        &self,
        power: i64,
        keep: impl Fn(&Rational) -> bool,
    ) -> Result<OrbClass> {
        let mut out = OrbClass::zero();
        for (d, term) in self.terms.iter().filter(|(d, _)| keep(d)) {
            let q = d + &self.q_shift;
            let coeffs = term
                .poly
                .z_coefficient(power)
                .into_iter()
                .map(|c| {
                    if c.is_zero() {
                        Ok(NovikovScalar::zero())
                    } else {
                        NovikovScalar::monomial(c, &q)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let poly = SectorPoly::from_coeffs(term.poly.cap(), coeffs);
            out = out.add(&OrbClass::from_component(term.sector, poly));
        }
        Ok(out)
    }

    /// Degrees whose term has a nonzero `z^power` coefficient.
    pub fn degrees_with_z_power(&self, power: i64) -> Vec<Rational> {
        self.terms
            .iter()
            .filter(|(_, t)| t.poly.z_coefficient(power).iter().any(|c| !c.is_zero()))
            .map(|(d, _)| d.clone())
            .collect()
    }
}

/// The degree-`d` term `z * prod 1/(w P + b z)` in the sector ring of `<d>`.
pub fn j_term(inertia: &Inertia, d: &Rational) -> Result<JTerm> {
    let sector = inertia.degree_sector(d)?;
    let cap = inertia.sector(sector).dim();
    let mut poly = SectorPoly::monomial(cap, 0, ZLaurent::monomial(1, Rational::one()));
    for (w, b) in denominator_factors(inertia, d)?.factors {
        poly = poly.mul(&expand_reciprocal_factor(w, &b, cap)?)?;
    }
    Ok(JTerm { sector, poly })
}

pub fn j_series(inertia: &Inertia, cap: &Rational) -> Result<JSeries> {
    if crate::arith::is_negative(cap) {
        return Err(Error::Negative(cap.clone()));
    }
    let terms = degrees_up_to(inertia, cap)
        .into_iter()
        .map(|d| j_term(inertia, &d).map(|t| (d, t)))
        .collect::<Result<_>>()?;
    Ok(JSeries::from_terms(inertia.clone(), cap.clone(), terms))
}

/// Outcome of the differential equation at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfDegree {
    pub degree: Rational,
    /// `None` when the identity holds exactly.
    pub residual: Option<SectorPoly<ZLaurent>>,
}

impl PfDegree {
    pub fn passed(&self) -> bool {
        self.residual.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfReport {
    pub degrees: Vec<PfDegree>,
}

impl PfReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(PfDegree::passed)
    }

    pub fn first_failure(&self) -> Option<&PfDegree> {
        self.degrees.iter().find(|d| !d.passed())
    }
}

/// Checks `prod_{i,k<w_i} (w_i P + (d w_i - k) z) T_d = T_{d-1}` at every
/// degree of the series, with `T_{d-1} = 0` for `d < 1`.
pub fn pf_check(j: &JSeries) -> Result<PfReport> {
    let w = j.inertia().weights();
    let mut degrees = Vec::new();
    for (d, term) in j.terms() {
        let cap = term.poly.cap();
        let factors: Vec<_> = w
            .iter()
            .flat_map(|wi| (0..wi).map(move |k| (wi, k)))
            .map(|(wi, k)| linear_factor(cap, &uint(wi), &(d * uint(wi) - uint(k))))
            .collect();
        let lhs = SectorPoly::product(cap, &factors)?.mul(&term.poly)?;
        let previous = d - Rational::one();
        let rhs = if crate::arith::is_negative(&previous) {
            SectorPoly::zero(cap)
        } else {
            let t = j.term(&previous).ok_or(Error::SeriesTooShort {
                needed: previous.clone(),
            })?;
            t.poly.clone()
        };
        let diff = lhs.sub(&rhs)?;
        degrees.push(PfDegree {
            degree: d.clone(),
            residual: (!diff.is_zero()).then_some(diff),
        });
    }
    Ok(PfReport { degrees })
}

fn require_cover(j: &JSeries, needed: &Rational) -> Result<()> {
    if j.degree_cap() < needed {
        return Err(Error::SeriesTooShort {
            needed: needed.clone(),
        });
    }
    Ok(())
}

/// `D_j J` for a 0-based index `j` into the c-sequence:
/// `Q^{-c_j} prod_{m<j} (z d/dt - z c_m) J`.
pub fn apply_dj(j: usize, series: &JSeries) -> Result<JSeries> {
    let c = c_sequence(series.inertia().weights());
    if j >= c.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            len: c.len(),
        });
    }
    series.apply_roots(&c.values()[..j], &-c.get(j))
}

/// The class `v_j`: the `z^1` coefficient of `D_j J`.
///
/// Only the degree `d = c_j` may contribute; anything else is reported.
pub fn extract_v(j: usize, series: &JSeries) -> Result<OrbClass> {
    let c = c_sequence(series.inertia().weights());
    if j >= c.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            len: c.len(),
        });
    }
    let cj = c.get(j).clone();
    require_cover(series, &cj)?;
    let applied = apply_dj(j, series)?;
    only_contribution(&applied, 1, &cj)?;
    applied.z_coefficient(1)
}

/// `P o v_N`: the `z^1` coefficient of `(z d/dt - z c_N) D_N J`, a multiple of `1_0`.
pub fn extract_corner(series: &JSeries) -> Result<OrbClass> {
    let c = c_sequence(series.inertia().weights());
    require_cover(series, &int(1))?;
    let applied = series.apply_roots(c.values(), &-c.get(c.len() - 1))?;
    only_contribution(&applied, 1, &int(1))?;
    applied.z_coefficient(1)
}

fn only_contribution(series: &JSeries, power: i64, expected: &Rational) -> Result<()> {
    match series
        .degrees_with_z_power(power)
        .into_iter()
        .find(|d| d != expected)
    {
        None => Ok(()),
        Some(degree) => Err(Error::UnexpectedContribution {
            degree,
            detail: alloc::format!("z^{power} coefficient expected only from degree {expected}"),
        }),
    }
}

/// The single coefficient of a class supported on the basis element at
/// `position`.
fn single_coefficient(inertia: &Inertia, x: &OrbClass, position: usize) -> Result<NovikovScalar> {
    let terms = x.basis_terms(inertia);
    match terms.as_slice() {
        [(pos, c)] if *pos == position => Ok(c.clone()),
        _ => Err(Error::Inconsistent(alloc::format!(
            "extracted class is not a multiple of basis element {position}"
        ))),
    }
}

/// Rebuilds the matrix of `P o` in the standard basis from the series alone.
///
/// With `v_j = a_j e_j` extracted from `D_j J`, `P o v_j = Q^{c_{j+1}-c_j} v_{j+1}`
/// below the corner and `P o v_N = kappa 1_0` at the corner.
pub fn matrix_from_j(series: &JSeries) -> Result<QuantumMatrix> {
    let inertia = series.inertia();
    let c = c_sequence(inertia.weights());
    let n = c.len();
    let a = (0..n)
        .map(|j| single_coefficient(inertia, &extract_v(j, series)?, j))
        .collect::<Result<Vec<_>>>()?;
    let kappa = single_coefficient(inertia, &extract_corner(series)?, 0)?;
    let inverse = |x: &NovikovScalar| -> Result<NovikovScalar> {
        let (e, coeff) = x.as_monomial().ok_or(Error::NotInvertible)?;
        Ok(NovikovScalar::laurent_monomial(coeff.recip(), &-e))
    };
    let mut m = QuantumMatrix::zero(n);
    for j in 0..n - 1 {
        let step = NovikovScalar::laurent_monomial(Rational::one(), &(c.get(j + 1) - c.get(j)));
        let entry = step.mul(&a[j + 1]).mul(&inverse(&a[j])?);
        m.set(j + 1, j, entry.into_effective()?);
    }
    let corner = kappa.mul(&inverse(&a[n - 1])?);
    let existing = m.get(0, n - 1).clone();
    m.set(0, n - 1, existing.add(&corner.into_effective()?));
    Ok(m)
}
