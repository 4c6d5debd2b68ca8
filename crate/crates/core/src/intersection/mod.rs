//! Complete intersections `X_{d_0,...,d_m}` in `P(w_0,...,w_n)`.
//!
//! Quasismoothness is never checked. It is carried as a flag on
//! [`CIData`], and every classifier verdict is conditional on it.

pub mod fixtures;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{
    ceil_int, factorial, fract, int, is_negative, linear_factor, uint, Coeff, NovikovScalar,
    Rational, SectorPoly,
};
use crate::error::{Error, Result};
use crate::jfunction::{degrees_up_to, j_term, ISeries, JSeries, JTerm};
use crate::sector::{Inertia, OrbClass, Weights};

/// Weights and degrees of a complete intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CIData {
    weights: Weights,
    degrees: Vec<u64>,
    quasismooth: bool,
}

impl CIData {
    pub fn new(weights: Weights, degrees: Vec<u64>, quasismooth: bool) -> Result<Self> {
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(Error::NonPositiveDegree);
        }
        Ok(CIData {
            weights,
            degrees,
            quasismooth,
        })
    }

    pub fn from_slices(w: &[u64], d: &[u64], quasismooth: bool) -> Result<Self> {
        Self::new(Weights::new(w.to_vec())?, d.to_vec(), quasismooth)
    }

    /// Parses `"w0,...,wn;d0,...,dm"`.
    pub fn parse_row(row: &str, quasismooth: bool) -> Result<Self> {
        let (w, d) = row
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected \"weights;degrees\", got {row:?}")))?;
        let degrees = parse_degrees(d)?;
        Self::new(w.parse()?, degrees, quasismooth)
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn quasismooth_assumed(&self) -> bool {
        self.quasismooth
    }

    /// Number of equations `m + 1`.
    pub fn codimension(&self) -> usize {
        self.degrees.len()
    }

    /// `n - m - 1`; negative when there are more equations than coordinates.
    pub fn dimension(&self) -> i64 {
        self.weights.n() as i64 - self.codimension() as i64
    }

    /// `k_X = sum d_j - sum w_i`.
    pub fn k_x(&self) -> i64 {
        self.degrees.iter().sum::<u64>() as i64 - self.weights.total() as i64
    }

    pub fn ambient(&self) -> Inertia {
        Inertia::new(self.weights.clone())
    }

    /// `#{j : d_j f in Z}`.
    pub fn integral_degree_count(&self, f: &Rational) -> usize {
        self.degrees
            .iter()
            .filter(|&&d| (f * uint(d)).is_integer())
            .count()
    }

    /// `#{i : w_i f in Z}`.
    pub fn integral_weight_count(&self, f: &Rational) -> usize {
        self.weights
            .iter()
            .filter(|&w| (f * uint(w)).is_integer())
            .count()
    }

    /// `sum_i <f w_i>`.
    pub fn weight_fraction_sum(&self, f: &Rational) -> Rational {
        fraction_sum(self.weights.iter(), f)
    }

    /// `sum_j <f d_j>`.
    pub fn degree_fraction_sum(&self, f: &Rational) -> Rational {
        fraction_sum(self.degrees.iter().copied(), f)
    }
}

impl fmt::Display for CIData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.degrees.iter().map(|d| format!("{d}")).collect();
        write!(f, "X_{} in P({})", d.join(","), self.weights)
    }
}

fn parse_degrees(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<i64>() {
                Ok(v) if v <= 0 => Err(Error::NonPositiveDegree),
                Ok(v) => Ok(v as u64),
                Err(_) => Err(Error::Parse(format!("bad degree {t:?}"))),
            }
        })
        .collect()
}

fn fraction_sum(xs: impl Iterator<Item = u64>, f: &Rational) -> Rational {
    xs.map(|x| fract(&(f * uint(x))))
        .fold(Rational::zero(), |a, b| a + b)
}

fn ceiling_sum(xs: impl Iterator<Item = u64>, f: &Rational) -> Rational {
    xs.map(|x| Rational::from_integer(ceil_int(&(f * uint(x)))))
        .fold(Rational::zero(), |a, b| a + b)
}

/// `k_f = sum_j ceil(f d_j) - sum_i ceil(f w_i)`.
pub fn k_f_ceiling(ci: &CIData, f: &Rational) -> Rational {
    ceiling_sum(ci.degrees.iter().copied(), f) - ceiling_sum(ci.weights.iter(), f)
}

/// `k_f = k_X f + sum_j <-f d_j> - sum_i <-f w_i>`.
pub fn k_f_fractional(ci: &CIData, f: &Rational) -> Rational {
    let neg = -f;
    int(ci.k_x()) * f + fraction_sum(ci.degrees.iter().copied(), &neg)
        - fraction_sum(ci.weights.iter(), &neg)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KInvariants {
    pub k_x: i64,
    pub k_f: BTreeMap<Rational, Rational>,
}

/// `k_X` and `k_f` for every sector, evaluating both expressions of `k_f`.
pub fn k_invariants(ci: &CIData) -> Result<KInvariants> {
    let mut k_f = BTreeMap::new();
    for s in ci.ambient().sectors() {
        let a = k_f_ceiling(ci, s.f());
        let b = k_f_fractional(ci, s.f());
        if a != b {
            return Err(Error::Inconsistent(format!(
                "k_f at f = {}: ceiling form {a}, fractional form {b}",
                s.f()
            )));
        }
        k_f.insert(s.f().clone(), a);
    }
    Ok(KInvariants { k_x: ci.k_x(), k_f })
}

/// Which clause of a per-sector test was satisfied first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Clause {
    /// `#{j : d_j f in Z} >= #{i : w_i f in Z}`.
    Counts,
    /// `k_f < -1`.
    CanonicalBelowMinusOne,
    /// `sum <f w_i> > 1 + sum <f d_j>`.
    FractionalInequality,
}

impl Clause {
    pub fn name(self) -> &'static str {
        match self {
            Clause::Counts => "counts",
            Clause::CanonicalBelowMinusOne => "k_f<-1",
            Clause::FractionalInequality => "fractional",
        }
    }
}

/// Data for one nonzero sector, shared by both classifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorCheck {
    pub f: Rational,
    pub k_f: Rational,
    pub integral_degrees: usize,
    pub integral_weights: usize,
    pub weight_fraction_sum: Rational,
    pub degree_fraction_sum: Rational,
    pub clause: Option<Clause>,
}

impl SectorCheck {
    fn new(ci: &CIData, f: &Rational) -> Self {
        SectorCheck {
            f: f.clone(),
            k_f: k_f_ceiling(ci, f),
            integral_degrees: ci.integral_degree_count(f),
            integral_weights: ci.integral_weight_count(f),
            weight_fraction_sum: ci.weight_fraction_sum(f),
            degree_fraction_sum: ci.degree_fraction_sum(f),
            clause: None,
        }
    }

    pub fn counts_hold(&self) -> bool {
        self.integral_degrees >= self.integral_weights
    }

    pub fn canonical_holds(&self) -> bool {
        self.k_f < int(-1)
    }

    pub fn fractional_holds(&self) -> bool {
        self.weight_fraction_sum > &self.degree_fraction_sum + Rational::one()
    }

    pub fn passed(&self) -> bool {
        self.clause.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifierReport {
    pub sectors: Vec<SectorCheck>,
    pub verdict: bool,
    /// Verdicts assume the input is quasismooth.
    pub assumes_quasismooth: bool,
}

impl ClassifierReport {
    pub fn sector(&self, f: &Rational) -> Option<&SectorCheck> {
        self.sectors.iter().find(|s| &s.f == f)
    }

    pub fn first_failure(&self) -> Option<&SectorCheck> {
        self.sectors.iter().find(|s| !s.passed())
    }
}

fn classify(ci: &CIData, pick: impl Fn(&SectorCheck) -> Option<Clause>) -> ClassifierReport {
    let sectors: Vec<SectorCheck> = ci
        .ambient()
        .sectors()
        .iter()
        .filter(|s| !s.is_untwisted())
        .map(|s| {
            let mut check = SectorCheck::new(ci, s.f());
            check.clause = pick(&check);
            check
        })
        .collect();
    let verdict = sectors.iter().all(SectorCheck::passed);
    ClassifierReport {
        sectors,
        verdict,
        assumes_quasismooth: ci.quasismooth,
    }
}

/// For every nonzero `f`: `k_f < -1`, or the integral-degree count is at
/// least the integral-weight count.
pub fn cor12_hypothesis(ci: &CIData) -> ClassifierReport {
    classify(ci, |c| {
        if c.counts_hold() {
            Some(Clause::Counts)
        } else if c.canonical_holds() {
            Some(Clause::CanonicalBelowMinusOne)
        } else {
            None
        }
    })
}

/// Well-formed with terminal singularities, for quasismooth input: every
/// nonzero `f` satisfies the count clause or the fractional inequality.
pub fn terminal_check(ci: &CIData) -> Result<ClassifierReport> {
    if !ci.quasismooth {
        return Err(Error::QuasismoothRequired);
    }
    Ok(classify(ci, |c| {
        if c.counts_hold() {
            Some(Clause::Counts)
        } else if c.fractional_holds() {
            Some(Clause::FractionalInequality)
        } else {
            None
        }
    }))
}

/// The values `b` with `0 <= b <= x` and `b = x mod 1`, increasing.
fn nonnegative_steps(x: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut b = fract(x);
    while &b <= x {
        out.push(b.clone());
        b += Rational::one();
    }
    out
}

/// Numerator factors `(d_j, b)` of the degree-`d` term, `b = 0` included.
pub fn numerator_factors(ci: &CIData, d: &Rational) -> Vec<(u64, Rational)> {
    ci.degrees
        .iter()
        .flat_map(|&dj| {
            nonnegative_steps(&(d * uint(dj)))
                .into_iter()
                .map(move |b| (dj, b))
        })
        .collect()
}

pub fn i_term(ci: &CIData, d: &Rational) -> Result<JTerm> {
    let inertia = ci.ambient();
    let mut term = j_term(&inertia, d)?;
    let cap = term.poly.cap();
    let numerator: Vec<_> = numerator_factors(ci, d)
        .into_iter()
        .map(|(dj, b)| linear_factor(cap, &uint(dj), &b))
        .collect();
    term.poly = SectorPoly::product(cap, &numerator)?.mul(&term.poly)?;
    Ok(term)
}

/// The I-series at `t = 0`, all degrees up to `cap`, in the cohomology of
/// the ambient inertia stack.
pub fn i_series(ci: &CIData, cap: &Rational) -> Result<ISeries> {
    if is_negative(cap) {
        return Err(Error::Negative(cap.clone()));
    }
    let inertia = ci.ambient();
    let terms = degrees_up_to(&inertia, cap)
        .into_iter()
        .map(|d| i_term(ci, &d).map(|t| (d, t)))
        .collect::<Result<_>>()?;
    Ok(JSeries::from_terms(inertia, cap.clone(), terms))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MirrorCase {
    /// `k_X < -1`: `I = i_*(z + O(1/z))` at `t = 0`.
    BelowMinusOne,
    /// `k_X = -1`: `I = i_*(z + s + O(1/z))`.
    MinusOne,
    /// `k_X = 0`: `I = i_*(F z + g P + O(1/z))`.
    Zero,
}

impl MirrorCase {
    pub fn of(k_x: i64) -> Result<Self> {
        match k_x {
            k if k < -1 => Ok(MirrorCase::BelowMinusOne),
            -1 => Ok(MirrorCase::MinusOne),
            0 => Ok(MirrorCase::Zero),
            k => Err(Error::PositiveCanonical(k)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MirrorCase::BelowMinusOne => "k<-1",
            MirrorCase::MinusOne => "k=-1",
            MirrorCase::Zero => "k=0",
        }
    }
}

/// The `z^1` and `z^0` parts of the I-series with the pushforward class
/// `prod_j d_j P` divided out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorData {
    pub case: MirrorCase,
    pub degree_cap: Rational,
    /// Untwisted `z^1` coefficient over `prod d_j P^{m+1}`, by power of `P`.
    pub z1_quotient: Vec<NovikovScalar>,
    /// Untwisted `z^0` coefficient over `prod d_j P^{m+1}`, by power of `P`.
    pub z0_quotient: Vec<NovikovScalar>,
    pub twisted_z1: OrbClass,
    pub twisted_z0: OrbClass,
    /// `F`: constant term of the `z^1` quotient.
    pub f: NovikovScalar,
    /// `g`: `P`-coefficient of the `z^0` quotient (`k_X = 0`).
    pub g: NovikovScalar,
    /// `s`: constant term of the `z^0` quotient (`k_X = -1`).
    pub s: NovikovScalar,
    /// `Q prod d_j! / prod w_i!` when `k_X = -1`.
    pub s_closed_form: Option<NovikovScalar>,
    /// `g / F` truncated at the degree cap (`k_X = 0`).
    pub tau: Option<NovikovScalar>,
}

fn untwisted(d: &Rational) -> bool {
    d.is_integer()
}

/// Exact division of a class in `H(P^n)` by `c P^k`, valid modulo `P^{n-k+1}`.
fn divide_pushforward(
    poly: Option<&SectorPoly<NovikovScalar>>,
    n: usize,
    k: usize,
    c: &Rational,
) -> Result<Vec<NovikovScalar>> {
    let coeffs: Vec<NovikovScalar> = match poly {
        Some(p) => p.coeffs().to_vec(),
        None => vec![NovikovScalar::zero(); n + 1],
    };
    if let Some(p) = coeffs[..k].iter().position(|x| !x.is_zero()) {
        return Err(Error::ShapeFailure(format!(
            "coefficient of P^{p} is nonzero, so the class is not divisible by P^{k}"
        )));
    }
    let inv = c.recip();
    Ok(coeffs[k..].iter().map(|x| x.scale(&inv)).collect())
}

fn require_zero(what: &str, values: &[NovikovScalar], skip: usize) -> Result<()> {
    match values
        .iter()
        .enumerate()
        .find(|(p, v)| *p != skip && !v.is_zero())
    {
        None => Ok(()),
        Some((p, v)) => Err(Error::ShapeFailure(format!(
            "{what}: P^{p} coefficient {v}"
        ))),
    }
}

fn at(values: &[NovikovScalar], p: usize) -> NovikovScalar {
    values.get(p).cloned().unwrap_or_else(NovikovScalar::zero)
}

/// Splits the I-series into the mirror data of its canonical class case and
/// verifies the shape that case predicts.
pub fn mirror_data(ci: &CIData, series: &ISeries) -> Result<MirrorData> {
    let case = MirrorCase::of(ci.k_x())?;
    let hypothesis = cor12_hypothesis(ci);
    if let Some(bad) = hypothesis.first_failure() {
        return Err(Error::ShapeFailure(format!(
            "hypothesis fails at f = {}",
            bad.f
        )));
    }
    let n = ci.weights.n();
    let k = ci.codimension();
    if k > n {
        return Err(Error::ShapeFailure(format!(
            "{k} equations in P^{n}: division by P^{k} is ambiguous"
        )));
    }
    let prod_d = ci.degrees.iter().fold(Rational::one(), |a, &d| a * uint(d));

    let z1 = series.z_coefficient_where(1, untwisted)?;
    let z0 = series.z_coefficient_where(0, untwisted)?;
    let z1_quotient = divide_pushforward(z1.component(0), n, k, &prod_d)?;
    let z0_quotient = divide_pushforward(z0.component(0), n, k, &prod_d)?;
    let twisted_z1 = series.z_coefficient_where(1, |d| !untwisted(d))?;
    let twisted_z0 = series.z_coefficient_where(0, |d| !untwisted(d))?;

    if !twisted_z1.is_zero() {
        return Err(Error::ShapeFailure(
            "twisted z^1 coefficient is nonzero".into(),
        ));
    }
    if case != MirrorCase::Zero && !twisted_z0.is_zero() {
        return Err(Error::ShapeFailure(
            "twisted z^0 coefficient is nonzero".into(),
        ));
    }

    let f = at(&z1_quotient, 0);
    require_zero("z^1 quotient", &z1_quotient, 0)?;
    let mut out = MirrorData {
        case,
        degree_cap: series.degree_cap().clone(),
        z1_quotient: z1_quotient.clone(),
        z0_quotient: z0_quotient.clone(),
        twisted_z1,
        twisted_z0,
        f: f.clone(),
        g: NovikovScalar::zero(),
        s: NovikovScalar::zero(),
        s_closed_form: None,
        tau: None,
    };
    match case {
        MirrorCase::BelowMinusOne => {
            if f != NovikovScalar::one() {
                return Err(Error::ShapeFailure(format!("F = {f}, expected 1")));
            }
            require_zero("z^0 quotient", &z0_quotient, usize::MAX)?;
        }
        MirrorCase::MinusOne => {
            if f != NovikovScalar::one() {
                return Err(Error::ShapeFailure(format!("F = {f}, expected 1")));
            }
            require_zero("z^0 quotient", &z0_quotient, 0)?;
            out.s = at(&z0_quotient, 0);
            let closed = s_closed_form(ci);
            let expected = if series.degree_cap() >= &int(1) {
                closed.clone()
            } else {
                NovikovScalar::zero()
            };
            if out.s != expected {
                return Err(Error::ShapeFailure(format!(
                    "s = {}, closed form gives {expected}",
                    out.s
                )));
            }
            out.s_closed_form = Some(closed);
        }
        MirrorCase::Zero => {
            if f.constant_term() != Rational::one() {
                return Err(Error::ShapeFailure(format!(
                    "F = {f} has constant term != 1"
                )));
            }
            if z1_quotient.len() < 2 {
                return Err(Error::ShapeFailure(
                    "X has dimension 0, so the P-coefficient of G is not visible".into(),
                ));
            }
            require_zero("z^0 quotient", &z0_quotient, 1)?;
            out.g = at(&z0_quotient, 1);
            let cap = series.degree_cap();
            out.tau = Some(f.inverse_truncated(cap)?.mul(&out.g).truncate(cap));
        }
    }
    Ok(out)
}

/// `Q prod_j d_j! / prod_i w_i!`.
pub fn s_closed_form(ci: &CIData) -> NovikovScalar {
    let num = ci.degrees.iter().fold(Rational::one(), |a, &d| {
        a * Rational::from_integer(factorial(d))
    });
    let den = ci.weights.iter().fold(Rational::one(), |a, w| {
        a * Rational::from_integer(factorial(w))
    });
    NovikovScalar::monomial(num / den, &int(1)).expect("positive exponent")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma61Entry {
    pub f: Rational,
    /// `sum ceil(f d_j) - sum ceil(f w_i)`.
    pub lhs: Rational,
    /// `f k_X`.
    pub bound: Rational,
    pub holds: bool,
    /// Strict negativity, checked when `k_X = 0` and `f != 0`.
    pub strict: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma61Report {
    pub entries: Vec<Lemma61Entry>,
}

impl Lemma61Report {
    pub fn violations(&self) -> Vec<&Lemma61Entry> {
        self.entries
            .iter()
            .filter(|e| !e.holds || e.strict == Some(false))
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.violations().is_empty()
    }
}

/// `sum ceil(f d_j) - sum ceil(f w_i) <= f k_X` on every sector, and `< 0`
/// for nonzero `f` when `k_X = 0`.
pub fn lemma61_check(ci: &CIData) -> Result<Lemma61Report> {
    if !ci.quasismooth {
        return Err(Error::QuasismoothRequired);
    }
    let k = ci.k_x();
    if k > 0 {
        return Err(Error::PositiveCanonical(k));
    }
    let entries = ci
        .ambient()
        .sectors()
        .iter()
        .map(|s| {
            let f = s.f().clone();
            let lhs = k_f_ceiling(ci, &f);
            let bound = int(k) * &f;
            let strict = (k == 0 && !f.is_zero()).then(|| is_negative(&lhs));
            Lemma61Entry {
                holds: lhs <= bound,
                f,
                lhs,
                bound,
                strict,
            }
        })
        .collect();
    Ok(Lemma61Report { entries })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReidTaiReport {
    pub r: u64,
    /// The weights reduced into `[0, r)`.
    pub weights: Vec<u64>,
    pub well_formed: bool,
    /// Smallest `k` with `sum <k a_i / r> <= 1`.
    pub failing_k: Option<u64>,
    pub terminal: bool,
}

/// Reid-Tai test for the cyclic quotient `1/r(a_1, ..., a_n)`.
pub fn reid_tai(r: u64, a: &[i64]) -> Result<ReidTaiReport> {
    if r < 2 {
        return Err(Error::InvalidQuotient(format!(
            "order must be at least 2, got {r}"
        )));
    }
    if a.is_empty() {
        return Err(Error::InvalidQuotient("no weights".into()));
    }
    let ri = r as i64;
    let weights: Vec<u64> = a.iter().map(|x| x.rem_euclid(ri) as u64).collect();
    let well_formed = (0..weights.len()).all(|skip| {
        weights
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .fold(r, |g, (_, &x)| g.gcd(&x))
            == 1
    });
    let failing_k = (1..r).find(|&k| {
        let sum = weights
            .iter()
            .map(|&x| Rational::new(((k * x) % r).into(), r.into()))
            .fold(Rational::zero(), |s, t| s + t);
        sum <= Rational::one()
    });
    Ok(ReidTaiReport {
        r,
        terminal: well_formed && failing_k.is_none(),
        weights,
        well_formed,
        failing_k,
    })
}

/// Hand-supplied reordering of weights and degrees for a sector `f`.
///
/// After reordering, the first `paired` degrees and weights satisfy
/// `f d_j = f w_j mod Z` with neither integral; every later degree has
/// `f d_j` integral; weights at positions `paired..=m + c` have `f w_i`
/// integral, where `c` is the integral-weight count minus the
/// integral-degree count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub weight_order: Vec<usize>,
    pub degree_order: Vec<usize>,
    pub paired: usize,
}

/// Local model `1/r(0^c, a_{m+c+1}, ..., a_n)` of `X` along `P(V^f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalQuotient {
    pub r: u64,
    /// Number of trivially acted-on directions.
    pub fixed: usize,
    /// `r <f w_i>` for the remaining weights, after the zeros.
    pub weights: Vec<u64>,
}

impl LocalQuotient {
    pub fn all_weights(&self) -> Vec<i64> {
        core::iter::repeat_n(0, self.fixed)
            .chain(self.weights.iter().map(|&a| a as i64))
            .collect()
    }

    pub fn reid_tai(&self) -> ReidTaiReport {
        reid_tai(self.r, &self.all_weights()).expect("r >= 2 and weights nonempty")
    }

    /// `sum <a_i / r>` over the moving weights: the `k = 1` Reid-Tai sum.
    pub fn first_sum(&self) -> Rational {
        self.weights
            .iter()
            .map(|&a| Rational::new(a.into(), self.r.into()))
            .fold(Rational::zero(), |s, t| s + t)
    }
}

fn is_permutation(order: &[usize], len: usize) -> bool {
    let mut seen = vec![false; len];
    order.len() == len
        && order
            .iter()
            .all(|&i| i < len && !core::mem::replace(&mut seen[i], true))
}

pub fn local_singularity(ci: &CIData, f: &Rational, matching: &Matching) -> Result<LocalQuotient> {
    let inertia = ci.ambient();
    inertia.require_sector(f)?;
    if f.is_zero() {
        return Err(Error::InvalidMatching("f must be nonzero".into()));
    }
    let w = ci.weights.as_slice();
    let d = &ci.degrees;
    if !is_permutation(&matching.weight_order, w.len())
        || !is_permutation(&matching.degree_order, d.len())
    {
        return Err(Error::InvalidMatching("orders must be permutations".into()));
    }
    let c = ci.integral_weight_count(f) as i64 - ci.integral_degree_count(f) as i64;
    if c < 1 {
        return Err(Error::InvalidMatching(format!(
            "X does not meet P(V^f) for f = {f} (c = {c})"
        )));
    }
    let c = c as usize;
    let m = d.len() - 1;
    let l = matching.paired;
    let wf = |i: usize| f * uint(w[matching.weight_order[i]]);
    let df = |j: usize| f * uint(d[matching.degree_order[j]]);
    if l > d.len() || m + c >= w.len() {
        return Err(Error::InvalidMatching(
            "pairing exceeds the available data".into(),
        ));
    }
    for j in 0..l {
        let (a, b) = (df(j), wf(j));
        if a.is_integer() || fract(&a) != fract(&b) {
            return Err(Error::InvalidMatching(format!(
                "position {j}: f d = {a} and f w = {b} are not a nonintegral match"
            )));
        }
    }
    if let Some(j) = (l..d.len()).find(|&j| !df(j).is_integer()) {
        return Err(Error::InvalidMatching(format!(
            "degree at position {j} is unpaired but f d is not integral"
        )));
    }
    if let Some(i) = (l..=m + c).find(|&i| !wf(i).is_integer()) {
        return Err(Error::InvalidMatching(format!(
            "weight at position {i} should have f w integral"
        )));
    }
    let r = u64::try_from(f.denom()).expect("sector denominators are small");
    let weights = (m + c + 1..w.len())
        .map(|i| {
            let a = fract(&wf(i)) * uint(r);
            u64::try_from(a.to_integer()).expect("reduced weight fits")
        })
        .collect();
    Ok(LocalQuotient {
        r,
        fixed: c,
        weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ci(w: &[u64], d: &[u64]) -> CIData {
        CIData::from_slices(w, d, true).unwrap()
    }

    #[test]
    fn parsing() {
        let x = CIData::parse_row("1,1,1,1,1;5", true).unwrap();
        assert_eq!(x.degrees(), &[5]);
        assert_eq!(x.to_string(), "X_5 in P(1,1,1,1,1)");
        assert!(CIData::parse_row("1,1;0", true).is_err());
        assert!(CIData::parse_row("1,1", true).is_err());
        assert_eq!(
            CIData::parse_row("0,1;2", true),
            Err(Error::NonPositiveWeight)
        );
    }

    #[test]
    fn canonical_invariants() {
        let x5 = ci(&[1, 1, 1, 1, 1], &[5]);
        let k = k_invariants(&x5).unwrap();
        assert_eq!(k.k_x, 0);
        assert_eq!(k.k_f.get(&int(0)), Some(&int(0)));

        let x7 = ci(&[1, 1, 1, 1, 1, 2], &[7]);
        let k = k_invariants(&x7).unwrap();
        assert_eq!(k.k_x, 0);
        assert_eq!(k.k_f.get(&rat(1, 2)), Some(&int(-2)));
    }

    #[test]
    fn hypothesis_examples() {
        let x6 = cor12_hypothesis(&ci(&[1, 1, 1, 1, 2], &[6]));
        assert!(x6.verdict);
        assert_eq!(x6.sector(&rat(1, 2)).unwrap().clause, Some(Clause::Counts));

        let x7 = cor12_hypothesis(&ci(&[1, 1, 1, 1, 1, 2], &[7]));
        assert!(x7.verdict);
        assert_eq!(
            x7.sector(&rat(1, 2)).unwrap().clause,
            Some(Clause::CanonicalBelowMinusOne)
        );

        // counts fail (0 < 1) but k_{1/2} = 2 - 4 = -2 < -1
        let x3 = cor12_hypothesis(&ci(&[1, 1, 1, 2], &[3]));
        let half = x3.sector(&rat(1, 2)).unwrap();
        assert!(!half.counts_hold());
        assert_eq!(half.k_f, int(-2));
        assert!(x3.verdict);
    }

    #[test]
    fn terminal_examples() {
        assert!(terminal_check(&ci(&[1, 1, 1, 1, 2], &[6])).unwrap().verdict);
        assert!(
            terminal_check(&ci(&[1, 1, 1, 2, 5], &[10]))
                .unwrap()
                .verdict
        );
        let x3 = terminal_check(&ci(&[1, 1, 1, 2], &[3])).unwrap();
        assert!(!x3.verdict);
        let half = x3.first_failure().unwrap();
        assert_eq!(half.f, rat(1, 2));
        assert_eq!(half.weight_fraction_sum, rat(3, 2));
        assert_eq!(&half.degree_fraction_sum + int(1), rat(3, 2));

        let not_qs = CIData::from_slices(&[1, 1, 1, 2], &[3], false).unwrap();
        assert_eq!(terminal_check(&not_qs), Err(Error::QuasismoothRequired));
    }

    #[test]
    fn reid_tai_examples() {
        assert!(!reid_tai(2, &[1, 1]).unwrap().terminal);
        assert!(reid_tai(2, &[1, 1, 1]).unwrap().terminal);
        let du_val = reid_tai(3, &[1, 2]).unwrap();
        assert!(!du_val.terminal);
        assert!(du_val.well_formed);
        assert_eq!(du_val.failing_k, Some(1));
        // quasi-reflection: hcf(4, 2) = 2 after removing the 1
        assert!(!reid_tai(4, &[1, 2]).unwrap().well_formed);
        assert!(reid_tai(1, &[1]).is_err());
        assert!(reid_tai(3, &[]).is_err());
    }

    #[test]
    fn lemma61_examples() {
        let x5 = lemma61_check(&ci(&[1, 1, 1, 1, 1], &[5])).unwrap();
        assert_eq!(x5.entries.len(), 1);
        assert!(x5.passed());

        let x6 = lemma61_check(&ci(&[1, 1, 1, 1, 2], &[6])).unwrap();
        let half = x6.entries.iter().find(|e| e.f == rat(1, 2)).unwrap();
        assert_eq!(half.lhs, int(-2));
        assert_eq!(half.strict, Some(true));

        assert_eq!(
            lemma61_check(&ci(&[1, 1], &[3])),
            Err(Error::PositiveCanonical(1))
        );
    }

    #[test]
    fn i_series_low_degrees() {
        let x5 = ci(&[1, 1, 1, 1, 1], &[5]);
        let i = i_series(&x5, &int(1)).unwrap();
        let t0 = &i.term(&int(0)).unwrap().poly;
        assert_eq!(
            t0.z_coefficient(1),
            vec![int(0), int(5), int(0), int(0), int(0)]
        );
        let t1 = &i.term(&int(1)).unwrap().poly;
        assert_eq!(t1.z_coefficient(1)[1], int(600));
    }

    #[test]
    fn mirror_examples() {
        let x5 = ci(&[1, 1, 1, 1, 1], &[5]);
        let md = mirror_data(&x5, &i_series(&x5, &int(2)).unwrap()).unwrap();
        assert_eq!(md.case, MirrorCase::Zero);
        assert_eq!(md.f, "1 + 120*Q + 113400*Q^(2)".parse().unwrap());

        let x4 = ci(&[1, 1, 1, 1, 1], &[4]);
        let md = mirror_data(&x4, &i_series(&x4, &int(2)).unwrap()).unwrap();
        assert_eq!(md.case, MirrorCase::MinusOne);
        assert_eq!(md.s, "24*Q".parse().unwrap());

        let x2 = ci(&[1, 1, 1, 1], &[2]);
        let md = mirror_data(&x2, &i_series(&x2, &int(3)).unwrap()).unwrap();
        assert_eq!(md.case, MirrorCase::BelowMinusOne);
        assert_eq!(md.f, NovikovScalar::one());
        assert!(md.z0_quotient.iter().all(NovikovScalar::is_zero));
    }

    #[test]
    fn mirror_refuses_overdetermined() {
        let x = ci(&[1, 1], &[1, 1]);
        assert!(matches!(
            mirror_data(&x, &i_series(&x, &int(1)).unwrap()),
            Err(Error::ShapeFailure(_))
        ));
    }

    #[test]
    fn local_quotients() {
        // X_3 in P(1,1,1,2) at f = 1/2: pair the cubic with a weight-1
        // coordinate, keep the weight-2 one: 1/2(0,1,1)
        let x3 = ci(&[1, 1, 1, 2], &[3]);
        let m = Matching {
            weight_order: vec![0, 3, 1, 2],
            degree_order: vec![0],
            paired: 1,
        };
        let q = local_singularity(&x3, &rat(1, 2), &m).unwrap();
        assert_eq!(q.all_weights(), vec![0, 1, 1]);
        assert!(!q.reid_tai().terminal);

        let bad = Matching {
            weight_order: vec![3, 0, 1, 2],
            degree_order: vec![0],
            paired: 1,
        };
        assert!(local_singularity(&x3, &rat(1, 2), &bad).is_err());
    }
}
