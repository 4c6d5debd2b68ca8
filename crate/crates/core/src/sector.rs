//! Inertia-stack combinatorics of `P(w0,...,wn)`.
//!
//! Twisted sectors are indexed by the set `F` of reduced fractions `k/w_i`
//! in `[0, 1)`. The sector `P(V^f)` is the weighted projective space on the
//! sub-weights `{w_i : w_i f in Z}`; its age is `sum_i <-w_i f>`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{fract, int, uint, Coeff, NovikovScalar, Rational, SectorPoly};
use crate::error::{Error, Result};

/// Weight vector of a weighted projective space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weights {
    w: Vec<u64>,
    lcm: u64,
    total: u64,
}

impl Weights {
    pub fn new(w: Vec<u64>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::EmptyWeights);
        }
        if w.contains(&0) {
            return Err(Error::NonPositiveWeight);
        }
        let lcm = w.iter().fold(1u64, |acc, &x| acc.lcm(&x));
        let total = w.iter().sum();
        Ok(Weights { w, lcm, total })
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.w
    }

    /// Dimension `n` of `P(w0,...,wn)`.
    pub fn n(&self) -> usize {
        self.w.len() - 1
    }

    /// A single weight describes a point (`n = 0`); accepted, but callers
    /// may want to warn.
    pub fn is_point(&self) -> bool {
        self.w.len() == 1
    }

    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    /// `N = w0 + ... + wn`, the rank of orbifold cohomology.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.w.iter().copied()
    }

    /// `prod_i w_i^{w_i}`.
    pub fn self_power_product(&self) -> Rational {
        self.iter()
            .map(|w| num_traits::pow(uint(w), w as usize))
            .fold(Rational::one(), |a, b| a * b)
    }
}

impl FromStr for Weights {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parsed: Result<Vec<u64>> = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                match t.parse::<i64>() {
                    Ok(v) if v <= 0 => Err(Error::NonPositiveWeight),
                    Ok(v) => Ok(v as u64),
                    Err(_) => Err(Error::Parse(alloc::format!("bad weight {t:?}"))),
                }
            })
            .collect();
        Weights::new(parsed?)
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.w.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// One component `P(V^f)` of the inertia stack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    f: Rational,
    dim: usize,
    age: Rational,
    subweights: Vec<u64>,
}

impl Sector {
    pub fn new(w: &Weights, f: Rational) -> Self {
        let subweights: Vec<u64> = w
            .iter()
            .filter(|&wi| (&f * uint(wi)).is_integer())
            .collect();
        let age = w
            .iter()
            .map(|wi| fract(&-(&f * uint(wi))))
            .fold(Rational::zero(), |a, b| a + b);
        Sector {
            dim: subweights.len() - 1,
            f,
            age,
            subweights,
        }
    }

    pub fn f(&self) -> &Rational {
        &self.f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn age(&self) -> &Rational {
        &self.age
    }

    pub fn subweights(&self) -> &[u64] {
        &self.subweights
    }

    pub fn is_untwisted(&self) -> bool {
        self.f.is_zero()
    }

    /// `integral of P^dim` over the sector, `1/prod(subweights)`.
    pub fn volume(&self) -> Rational {
        self.subweights
            .iter()
            .fold(Rational::one(), |acc, &u| acc / uint(u))
    }
}

/// The set `F`, increasing, with each sector's data filled in.
pub fn sector_set(w: &Weights) -> Vec<Sector> {
    let mut fs: Vec<Rational> = w
        .iter()
        .flat_map(|wi| (0..wi).map(move |k| Rational::new(k.into(), wi.into())))
        .collect();
    fs.sort();
    fs.dedup();
    fs.into_iter().map(|f| Sector::new(w, f)).collect()
}

/// `1_f P^p`, located at `position` in the global basis ordering
/// (increasing `f`, then increasing `p`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisElement {
    pub sector: usize,
    pub p: usize,
    pub position: usize,
}

/// Sector data plus the basis layout for a fixed weight vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inertia {
    weights: Weights,
    sectors: Vec<Sector>,
    offsets: Vec<usize>,
}

impl Inertia {
    pub fn new(weights: Weights) -> Self {
        let sectors = sector_set(&weights);
        let mut offsets = Vec::with_capacity(sectors.len() + 1);
        let mut acc = 0usize;
        for s in &sectors {
            offsets.push(acc);
            acc += s.dim + 1;
        }
        offsets.push(acc);
        debug_assert_eq!(acc as u64, weights.total());
        Inertia {
            weights,
            sectors,
            offsets,
        }
    }

    pub fn from_slice(w: &[u64]) -> Result<Self> {
        Ok(Inertia::new(Weights::new(w.to_vec())?))
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn sector(&self, index: usize) -> &Sector {
        &self.sectors[index]
    }

    pub fn sector_count(&self) -> usize {
        self.sectors.len()
    }

    pub fn sector_index(&self, f: &Rational) -> Option<usize> {
        self.sectors.binary_search_by(|s| s.f.cmp(f)).ok()
    }

    pub fn require_sector(&self, f: &Rational) -> Result<usize> {
        self.sector_index(f)
            .ok_or_else(|| Error::NotInSectorSet(f.clone()))
    }

    /// Sector carrying degree `d`, i.e. the index of `<d>`.
    pub fn degree_sector(&self, d: &Rational) -> Result<usize> {
        self.sector_index(&fract(d))
            .ok_or_else(|| Error::DegreeNotInSectorSet(d.clone()))
    }

    /// `M_j`: position of `1_{f_j}` in the basis, i.e. the number of basis
    /// elements on earlier sectors.
    pub fn offset(&self, sector: usize) -> usize {
        self.offsets[sector]
    }

    /// `N`, the number of basis elements.
    pub fn rank(&self) -> usize {
        self.offsets[self.sectors.len()]
    }

    pub fn basis(&self) -> Vec<BasisElement> {
        (0..self.rank()).map(|pos| self.element(pos)).collect()
    }

    pub fn element(&self, position: usize) -> BasisElement {
        assert!(position < self.rank(), "basis position out of range");
        let sector = self.offsets.partition_point(|&o| o <= position) - 1;
        BasisElement {
            sector,
            p: position - self.offsets[sector],
            position,
        }
    }

    pub fn position(&self, sector: usize, p: usize) -> usize {
        assert!(p <= self.sectors[sector].dim);
        self.offsets[sector] + p
    }

    /// `<-f>`, exchanging `P(V^f)` with `P(V^{1-f})`.
    pub fn involution(&self, f: &Rational) -> Result<Rational> {
        self.require_sector(f)?;
        Ok(fract(&-f))
    }

    pub fn involution_index(&self, sector: usize) -> usize {
        let g = fract(&-&self.sectors[sector].f);
        self.sector_index(&g)
            .expect("sector set is closed under f -> <-f>")
    }

    /// Real age-shifted degree `2p + 2 age`.
    pub fn orbifold_degree(&self, e: &BasisElement) -> Rational {
        int(2 * e.p as i64) + int(2) * &self.sectors[e.sector].age
    }

    /// Orbifold Poincare pairing on basis classes:
    /// `(1_f P^a, 1_{<-f>} P^b) = delta_{a+b, dim_f} / prod(subweights of f)`.
    pub fn pairing(&self, a: &BasisElement, b: &BasisElement) -> Rational {
        let sa = &self.sectors[a.sector];
        if b.sector == self.involution_index(a.sector) && a.p + b.p == sa.dim {
            sa.volume()
        } else {
            Rational::zero()
        }
    }

    pub fn pairing_matrix(&self) -> Vec<Vec<Rational>> {
        let basis = self.basis();
        basis
            .iter()
            .map(|a| basis.iter().map(|b| self.pairing(a, b)).collect())
            .collect()
    }

    /// Lemma-style graph space dimension `n + sum floor(d w_i)` for `d > 0`.
    pub fn graph_space_dim(&self, d: &Rational) -> Result<i64> {
        if d <= &Rational::zero() {
            return Err(Error::Negative(d.clone()));
        }
        self.degree_sector(d)?;
        let floors: i64 = self
            .weights
            .iter()
            .map(|w| crate::arith::to_i64(&crate::arith::floor_int(&(d * uint(w)))))
            .sum();
        Ok(self.weights.n() as i64 + floors)
    }
}

/// Real virtual dimension of genus-`g`, `n_marks`-pointed twisted stable maps
/// of degree `d`: `2 n_marks + (2 - 2g)(n - 3) + 2 N d - 2 sum(ages)`.
pub fn virtual_dim(
    w: &Weights,
    g: u32,
    n_marks: u32,
    d: &Rational,
    sector_ages: &[Rational],
) -> Rational {
    let n = int(w.n() as i64);
    let canonical_term = int(2) * uint(w.total()) * d;
    let ages = sector_ages.iter().fold(Rational::zero(), |acc, a| acc + a);
    int(2 * n_marks as i64) + int(2 - 2 * g as i64) * (n - int(3)) + canonical_term - int(2) * ages
}

/// An orbifold cohomology class with Novikov coefficients:
/// one truncated `P`-polynomial per sector; missing sectors are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrbClass {
    components: BTreeMap<usize, SectorPoly<NovikovScalar>>,
}

impl OrbClass {
    pub fn zero() -> Self {
        OrbClass::default()
    }

    pub fn basis(inertia: &Inertia, e: &BasisElement) -> Self {
        Self::monomial(inertia, e, NovikovScalar::one())
    }

    /// `c * e` for a basis element `e`.
    pub fn monomial(inertia: &Inertia, e: &BasisElement, c: NovikovScalar) -> Self {
        let cap = inertia.sector(e.sector).dim;
        OrbClass::zero().with_component(e.sector, SectorPoly::monomial(cap, e.p, c))
    }

    pub fn from_component(sector: usize, poly: SectorPoly<NovikovScalar>) -> Self {
        OrbClass::zero().with_component(sector, poly)
    }

    fn with_component(mut self, sector: usize, poly: SectorPoly<NovikovScalar>) -> Self {
        if poly.is_zero() {
            self.components.remove(&sector);
        } else {
            self.components.insert(sector, poly);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, sector: usize) -> Option<&SectorPoly<NovikovScalar>> {
        self.components.get(&sector)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &SectorPoly<NovikovScalar>)> {
        self.components.iter().map(|(&s, p)| (s, p))
    }

    pub fn coefficient(&self, e: &BasisElement) -> NovikovScalar {
        self.components
            .get(&e.sector)
            .map(|poly| poly.coeff(e.p).clone())
            .unwrap_or_else(NovikovScalar::zero)
    }

    /// Nonzero `(basis position, coefficient)` pairs in basis order.
    pub fn basis_terms(&self, inertia: &Inertia) -> Vec<(usize, NovikovScalar)> {
        self.components
            .iter()
            .flat_map(|(&s, poly)| {
                poly.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(move |(p, c)| (inertia.position(s, p), c.clone()))
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&s, poly) in &other.components {
            let sum = match out.components.get(&s) {
                Some(existing) => existing.add(poly).expect("sector caps agree"),
                None => poly.clone(),
            };
            out = out.with_component(s, sum);
        }
        out
    }

    pub fn scale_by(&self, c: &NovikovScalar) -> Self {
        self.map_scalars(|x| x.mul(c))
    }

    pub fn map_scalars(&self, f: impl Fn(&NovikovScalar) -> NovikovScalar) -> Self {
        self.components
            .iter()
            .fold(OrbClass::zero(), |acc, (&s, poly)| {
                acc.with_component(s, poly.map(&f))
            })
    }

    pub fn is_effective(&self) -> bool {
        self.components
            .values()
            .all(|poly| poly.coeffs().iter().all(NovikovScalar::is_effective))
    }
}
