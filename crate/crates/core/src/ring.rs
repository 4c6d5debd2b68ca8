//! Small quantum orbifold cohomology of `P(w)` at `t = 0`.
//!
//! In the basis `1_{f_1}, 1_{f_1}P, ..., 1_{f_k}P^{dim_{f_k}}` multiplication by
//! `P` is a cyclic shift with weights `r_1, ..., r_N`: `r_i = 1` inside a
//! sector block, and at the last slot of block `j`
//! `r_i = Q^{f_{j+1} - f_j} s_{j+1} / s_j` (with `f_{k+1} = 1`), where
//! `s_j = prod_i w_i^{-ceil(f_j w_i)}`.
//!
//! After inverting `Q` the ring is `Lambda[P]/(P^N - Q prod w_i^{-w_i})`, and
//! `1_{f_j} = Q^{-f_j} s_j^{-1} P^{M_j}`. Every structure constant of the
//! product is therefore a single monomial, computed by [`multiplication_table`].

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arith::{ceil_int, int, pow_i, to_i64, uint, Coeff, NovikovScalar, Rational};
use crate::error::{Error, Result};
use crate::sector::{BasisElement, Inertia, OrbClass, Weights};

/// All fractions `k/w_i`, `0 <= k < w_i`, with multiplicity, increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CSequence {
    values: Vec<Rational>,
}

impl CSequence {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, j: usize) -> &Rational {
        &self.values[j]
    }

    /// `#{i < j : c_i = c_j}`, the power of `P` carried by the `j`-th
    /// rescaled basis vector.
    pub fn repeat_index(&self, j: usize) -> usize {
        self.values[..j]
            .iter()
            .filter(|c| **c == self.values[j])
            .count()
    }
}

pub fn c_sequence(w: &Weights) -> CSequence {
    let mut values: Vec<Rational> = w
        .iter()
        .flat_map(|wi| (0..wi).map(move |k| Rational::new(k.into(), wi.into())))
        .collect();
    values.sort();
    CSequence { values }
}

/// `s(f) = prod_i w_i^{-ceil(f w_i)}`, and `s(0) = 1`.
///
/// Accepts `f` in `F` or `f = 1`; at `f = 1` this is `prod_i w_i^{-w_i}`.
pub fn s_closed(w: &Weights, f: &Rational) -> Rational {
    w.iter()
        .map(|wi| pow_i(&uint(wi), -to_i64(&ceil_int(&(f * uint(wi))))))
        .fold(Rational::one(), |a, b| a * b)
}

/// `sigma_j = prod_{m : c_m < c_j} (c_j - c_m) / prod_i prod_b b`, the inner
/// product over `0 < b <= c_j w_i` with `<b> = <c_j w_i>`.
///
/// `j` is a 0-based index into the c-sequence.
pub fn sigma(w: &Weights, c: &CSequence, j: usize) -> Rational {
    let cj = c.get(j);
    let numerator = c
        .values()
        .iter()
        .filter(|cm| *cm < cj)
        .fold(Rational::one(), |acc, cm| acc * (cj - cm));
    let denominator = w
        .iter()
        .flat_map(|wi| positive_steps(&(cj * uint(wi))))
        .fold(Rational::one(), |acc, b| acc * b);
    numerator / denominator
}

/// The values `b` with `0 < b <= x` and `b = x mod 1`, increasing.
pub(crate) fn positive_steps(x: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut b = x.clone();
    while b > Rational::zero() {
        out.push(b.clone());
        b -= Rational::one();
    }
    out.reverse();
    out
}

/// Square matrix over the Novikov ring, `entries[row][col]`.
///
/// Column `i` holds the image of the `i`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumMatrix {
    entries: Vec<Vec<NovikovScalar>>,
}

impl QuantumMatrix {
    pub fn zero(n: usize) -> Self {
        QuantumMatrix {
            entries: vec![vec![NovikovScalar::zero(); n]; n],
        }
    }

    /// Builds from rows; errors unless the rows form a square matrix.
    pub fn from_rows(rows: Vec<Vec<NovikovScalar>>) -> Result<Self> {
        let n = rows.len();
        if let Some(row) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::Parse(alloc::format!(
                "row {row} has {} entries, expected {n}",
                rows[row].len()
            )));
        }
        Ok(QuantumMatrix { entries: rows })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> &NovikovScalar {
        &self.entries[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: NovikovScalar) {
        self.entries[row][col] = value;
    }

    pub fn rows(&self) -> &[Vec<NovikovScalar>] {
        &self.entries
    }

    /// `[r_1, ..., r_{N-1}]`, the entries `(i+1, i)`.
    pub fn sub_diagonal(&self) -> Vec<NovikovScalar> {
        (1..self.dim())
            .map(|i| self.entries[i][i - 1].clone())
            .collect()
    }

    /// Top-right entry `r_N`.
    pub fn corner(&self) -> &NovikovScalar {
        &self.entries[0][self.dim() - 1]
    }

    /// Matrix-vector product on coordinate vectors.
    pub fn apply(&self, v: &[NovikovScalar]) -> Vec<NovikovScalar> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(NovikovScalar::zero(), |acc, (a, x)| acc.add(&a.mul(x)))
            })
            .collect()
    }

    /// First entry where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.dim() != other.dim() {
            return Some((self.dim().min(other.dim()), 0));
        }
        (0..self.dim())
            .flat_map(|r| (0..self.dim()).map(move |c| (r, c)))
            .find(|&(r, c)| self.entries[r][c] != other.entries[r][c])
    }

    /// Errors with the first mismatching entry unless the matrices agree.
    pub fn expect_equal(&self, expected: &Self) -> Result<()> {
        match expected.first_difference(self) {
            None => Ok(()),
            Some((row, col)) => Err(Error::MatrixMismatch {
                row,
                col,
                expected: entry_text(expected, row, col),
                found: entry_text(self, row, col),
            }),
        }
    }
}

fn entry_text(m: &QuantumMatrix, row: usize, col: usize) -> alloc::string::String {
    if row < m.dim() && col < m.dim() {
        m.get(row, col).to_string()
    } else {
        "<missing>".to_string()
    }
}

/// `s_j` for every sector, followed by `s_{k+1} = prod w_i^{-w_i}`.
pub fn sector_constants(inertia: &Inertia) -> Vec<Rational> {
    let w = inertia.weights();
    inertia
        .sectors()
        .iter()
        .map(|s| s_closed(w, s.f()))
        .chain(core::iter::once(s_closed(w, &Rational::one())))
        .collect()
}

/// The weights `r_1, ..., r_N` of the cyclic `P`-multiplication matrix.
pub fn shift_weights(inertia: &Inertia) -> Vec<NovikovScalar> {
    let s = sector_constants(inertia);
    let mut r = vec![NovikovScalar::one(); inertia.rank()];
    for (j, sector) in inertia.sectors().iter().enumerate() {
        let last = inertia.offset(j + 1) - 1;
        let next_f = inertia
            .sectors()
            .get(j + 1)
            .map(|s| s.f().clone())
            .unwrap_or_else(Rational::one);
        let exponent = next_f - sector.f();
        r[last] =
            NovikovScalar::monomial(&s[j + 1] / &s[j], &exponent).expect("sector indices increase");
    }
    r
}

/// Matrix of quantum multiplication by `P` in the standard basis.
pub fn p_matrix(inertia: &Inertia) -> QuantumMatrix {
    let r = shift_weights(inertia);
    let n = r.len();
    let mut m = QuantumMatrix::zero(n);
    for (i, ri) in r.into_iter().enumerate() {
        m.set((i + 1) % n, i, ri);
    }
    m
}

/// `Q prod_i w_i^{-w_i}`, the value of `P^N` on `1_0`.
pub fn top_coefficient(w: &Weights) -> NovikovScalar {
    NovikovScalar::monomial(w.self_power_product().recip(), &int(1)).expect("positive exponent")
}

/// Matrix of `P` in the rescaled basis `Q^{c_j} sigma_j P^{r_j} 1_{c_j}`:
/// ones below the diagonal and `Q prod w_i^{-w_i}` in the corner.
pub fn companion_matrix(w: &Weights) -> QuantumMatrix {
    let n = w.total() as usize;
    let mut m = QuantumMatrix::zero(n);
    for i in 1..n {
        m.set(i, i - 1, NovikovScalar::one());
    }
    let corner = top_coefficient(w);
    let current = m.get(0, n - 1).clone();
    m.set(0, n - 1, current.add(&corner));
    m
}

/// Conjugates a matrix in the standard basis into the rescaled basis
/// `v'_j = Q^{c_j} sigma_j e_j`, i.e. returns `D^{-1} M D`.
pub fn to_rescaled_basis(inertia: &Inertia, m: &QuantumMatrix) -> Result<QuantumMatrix> {
    let w = inertia.weights();
    let c = c_sequence(w);
    let sigmas: Vec<Rational> = (0..c.len()).map(|j| sigma(w, &c, j)).collect();
    let n = m.dim();
    let mut out = QuantumMatrix::zero(n);
    for row in 0..n {
        for col in 0..n {
            let conj = NovikovScalar::laurent_monomial(
                &sigmas[col] / &sigmas[row],
                &(c.get(col) - c.get(row)),
            );
            out.set(row, col, conj.mul(m.get(row, col)).into_effective()?);
        }
    }
    Ok(out)
}

/// `P^{dim_{f_j}+1} 1_{f_j} = coefficient * 1_{target}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub sector: usize,
    pub power: usize,
    pub coefficient: NovikovScalar,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub relations: Vec<Relation>,
    /// `N`, with `P^N = top_coefficient * 1_0`.
    pub top_power: usize,
    pub top_coefficient: NovikovScalar,
}

impl RingPresentation {
    /// Product of the relation coefficients, which telescopes to `P^N`.
    pub fn chained_coefficient(&self) -> NovikovScalar {
        self.relations
            .iter()
            .fold(NovikovScalar::one(), |acc, r| acc.mul(&r.coefficient))
    }

    pub fn is_consistent(&self) -> bool {
        self.chained_coefficient() == self.top_coefficient
            && self.relations.iter().map(|r| r.power).sum::<usize>() == self.top_power
    }
}

pub fn presentation(inertia: &Inertia) -> RingPresentation {
    let r = shift_weights(inertia);
    let k = inertia.sector_count();
    let relations = inertia
        .sectors()
        .iter()
        .enumerate()
        .map(|(j, s)| Relation {
            sector: j,
            power: s.dim() + 1,
            coefficient: r[inertia.offset(j + 1) - 1].clone(),
            target: (j + 1) % k,
        })
        .collect();
    RingPresentation {
        relations,
        top_power: inertia.rank(),
        top_coefficient: top_coefficient(inertia.weights()),
    }
}

/// `P^m * 1_0` as a class: with `m = qN + M_j + p`,
/// `(Q prod w^{-w})^q Q^{f_j} s_j P^p 1_{f_j}`.
pub fn reduce_p_power(inertia: &Inertia, m: usize) -> OrbClass {
    let n = inertia.rank();
    let (q, rem) = (m / n, m % n);
    let e = inertia.element(rem);
    let sector = inertia.sector(e.sector);
    let s = s_closed(inertia.weights(), sector.f());
    let top = top_coefficient(inertia.weights());
    let coeff = (0..q).fold(
        NovikovScalar::monomial(s, sector.f()).expect("f >= 0"),
        |acc, _| acc.mul(&top),
    );
    OrbClass::monomial(inertia, &e, coeff)
}

/// Structure constants `e_a * e_b` for every ordered pair of basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationTable {
    products: Vec<Vec<OrbClass>>,
}

impl MultiplicationTable {
    /// Builds from `products[a][b] = e_a * e_b`; errors unless square.
    pub fn from_products(products: Vec<Vec<OrbClass>>) -> Result<Self> {
        let n = products.len();
        if products.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(
                "multiplication table is not square".to_string(),
            ));
        }
        Ok(MultiplicationTable { products })
    }

    pub fn rank(&self) -> usize {
        self.products.len()
    }

    pub fn product(&self, a: usize, b: usize) -> &OrbClass {
        &self.products[a][b]
    }

    pub fn rows(&self) -> &[Vec<OrbClass>] {
        &self.products
    }

    /// Bilinear extension of the table to arbitrary classes.
    pub fn multiply(&self, inertia: &Inertia, x: &OrbClass, y: &OrbClass) -> OrbClass {
        let xs = x.basis_terms(inertia);
        let ys = y.basis_terms(inertia);
        let mut acc = OrbClass::zero();
        for (a, ca) in &xs {
            for (b, cb) in &ys {
                acc = acc.add(&self.products[*a][*b].scale_by(&ca.mul(cb)));
            }
        }
        acc
    }

    /// Sets `Q = 0` in every structure constant.
    pub fn specialize_q_zero(&self) -> MultiplicationTable {
        MultiplicationTable {
            products: self
                .products
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| c.map_scalars(|x| NovikovScalar::constant(x.constant_term())))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Quantum product of two basis elements via `1_{f_j} = Q^{-f_j} s_j^{-1} P^{M_j}`.
pub fn basis_product(inertia: &Inertia, a: &BasisElement, b: &BasisElement) -> Result<OrbClass> {
    let w = inertia.weights();
    let (sa, sb) = (inertia.sector(a.sector), inertia.sector(b.sector));
    let prefactor = NovikovScalar::laurent_monomial(
        (s_closed(w, sa.f()) * s_closed(w, sb.f())).recip(),
        &-(sa.f() + sb.f()),
    );
    let product = reduce_p_power(inertia, a.position + b.position);
    let mut out = OrbClass::zero();
    for (s, poly) in product.components() {
        let mut coeffs = Vec::with_capacity(poly.cap() + 1);
        for c in poly.coeffs() {
            coeffs.push(c.mul(&prefactor).into_effective().map_err(|e| {
                Error::Inconsistent(alloc::format!(
                    "structure constant e{} * e{} is not effective: {e}",
                    a.position,
                    b.position
                ))
            })?);
        }
        out = out.add(&OrbClass::from_component(
            s,
            crate::arith::SectorPoly::from_coeffs(poly.cap(), coeffs),
        ));
    }
    Ok(out)
}

pub fn multiplication_table(inertia: &Inertia) -> Result<MultiplicationTable> {
    let basis = inertia.basis();
    let products = basis
        .iter()
        .map(|a| basis.iter().map(|b| basis_product(inertia, a, b)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    Ok(MultiplicationTable { products })
}

/// The Chen-Ruan orbifold cup product: the `Q -> 0` limit of the quantum table.
pub fn chen_ruan_table(inertia: &Inertia) -> Result<MultiplicationTable> {
    Ok(multiplication_table(inertia)?.specialize_q_zero())
}

/// Coordinate vector of a class in the standard basis.
pub fn coordinates(inertia: &Inertia, x: &OrbClass) -> Vec<NovikovScalar> {
    let mut v = vec![NovikovScalar::zero(); inertia.rank()];
    for (pos, c) in x.basis_terms(inertia) {
        v[pos] = c;
    }
    v
}

/// Novikov-bilinear extension of the orbifold Poincare pairing.
pub fn pair_classes(inertia: &Inertia, x: &OrbClass, y: &OrbClass) -> NovikovScalar {
    let mut acc = NovikovScalar::zero();
    for (a, ca) in x.basis_terms(inertia) {
        for (b, cb) in y.basis_terms(inertia) {
            let g = inertia.pairing(&inertia.element(a), &inertia.element(b));
            if !g.is_zero() {
                acc = acc.add(&ca.mul(&cb).scale(&g));
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn inertia(w: &[u64]) -> Inertia {
        Inertia::from_slice(w).unwrap()
    }

    fn q(c: Rational, e: Rational) -> NovikovScalar {
        NovikovScalar::monomial(c, &e).unwrap()
    }

    fn one() -> NovikovScalar {
        NovikovScalar::one()
    }

    #[test]
    fn c_sequence_examples() {
        let w = |v: &[u64]| Weights::new(v.to_vec()).unwrap();
        assert_eq!(c_sequence(&w(&[1, 1])).values(), &[int(0), int(0)]);
        assert_eq!(
            c_sequence(&w(&[1, 1, 2])).values(),
            &[int(0), int(0), int(0), rat(1, 2)]
        );
        assert_eq!(
            c_sequence(&w(&[1, 2, 3])).values(),
            &[int(0), int(0), int(0), rat(1, 3), rat(1, 2), rat(2, 3)]
        );
    }

    #[test]
    fn s_closed_examples() {
        let w = Weights::new(vec![1, 1, 2]).unwrap();
        assert_eq!(s_closed(&w, &int(0)), int(1));
        assert_eq!(s_closed(&w, &rat(1, 2)), rat(1, 2));
        assert_eq!(s_closed(&w, &int(1)), rat(1, 4));
    }

    #[test]
    fn sigma_examples() {
        let w = Weights::new(vec![1, 1, 2]).unwrap();
        let c = c_sequence(&w);
        assert_eq!(sigma(&w, &c, 0), int(1));
        assert_eq!(sigma(&w, &c, 3), rat(1, 2));
        let w = Weights::new(vec![1, 4]).unwrap();
        let c = c_sequence(&w);
        let j = c.values().iter().position(|x| *x == rat(1, 2)).unwrap();
        assert_eq!(sigma(&w, &c, j), rat(1, 16));
    }

    #[test]
    fn projective_line_matrix() {
        let m = p_matrix(&inertia(&[1, 1]));
        assert_eq!(m.get(0, 0), &NovikovScalar::zero());
        assert_eq!(m.get(0, 1), &q(int(1), int(1)));
        assert_eq!(m.get(1, 0), &one());
        assert_eq!(m.get(1, 1), &NovikovScalar::zero());
    }

    #[test]
    fn p112_matrix() {
        let m = p_matrix(&inertia(&[1, 1, 2]));
        let half = q(rat(1, 2), rat(1, 2));
        assert_eq!(m.sub_diagonal(), vec![one(), one(), half.clone()]);
        assert_eq!(m.corner(), &half);
    }

    #[test]
    fn p12_matrix() {
        let m = p_matrix(&inertia(&[1, 2]));
        let half = q(rat(1, 2), rat(1, 2));
        assert_eq!(m.sub_diagonal(), vec![one(), half.clone()]);
        assert_eq!(m.corner(), &half);
    }

    #[test]
    fn companion_examples() {
        let w = |v: &[u64]| Weights::new(v.to_vec()).unwrap();
        assert_eq!(
            companion_matrix(&w(&[1, 1, 2])).corner(),
            &q(rat(1, 4), int(1))
        );
        assert_eq!(
            companion_matrix(&w(&[1, 1, 1, 1])).corner(),
            &q(int(1), int(1))
        );
        assert_eq!(
            companion_matrix(&w(&[1, 2])).corner(),
            &q(rat(1, 4), int(1))
        );
        assert_eq!(companion_matrix(&w(&[3])).corner(), &q(rat(1, 27), int(1)));
        assert_eq!(companion_matrix(&w(&[2])).sub_diagonal(), vec![one()]);
    }

    #[test]
    fn rescaling_p_matrix_gives_companion() {
        for ws in [
            &[1u64, 1][..],
            &[1, 1, 2],
            &[1, 2, 3],
            &[2, 2],
            &[1, 4],
            &[3],
        ] {
            let i = inertia(ws);
            let rescaled = to_rescaled_basis(&i, &p_matrix(&i)).unwrap();
            assert_eq!(rescaled, companion_matrix(i.weights()), "w={ws:?}");
        }
    }

    #[test]
    fn presentations() {
        let p = presentation(&inertia(&[1, 1]));
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].power, 2);
        assert_eq!(p.relations[0].coefficient, q(int(1), int(1)));
        assert!(p.is_consistent());

        let p = presentation(&inertia(&[1, 1, 2]));
        assert_eq!(p.relations[0].power, 3);
        assert_eq!(p.relations[0].target, 1);
        assert_eq!(p.relations[0].coefficient, q(rat(1, 2), rat(1, 2)));
        assert_eq!(p.relations[1].power, 1);
        assert_eq!(p.relations[1].target, 0);
        assert_eq!(p.relations[1].coefficient, q(rat(1, 2), rat(1, 2)));
        assert_eq!(p.top_power, 4);
        assert_eq!(p.top_coefficient, q(rat(1, 4), int(1)));
        assert!(p.is_consistent());
    }

    #[test]
    fn quantum_products() {
        let i = inertia(&[1, 1, 2]);
        let t = multiplication_table(&i).unwrap();
        for x in 0..i.rank() {
            assert_eq!(t.product(0, x), &OrbClass::basis(&i, &i.element(x)));
        }
        // 1_{1/2} * 1_{1/2} = P^2 1_0
        assert_eq!(t.product(3, 3), &OrbClass::basis(&i, &i.element(2)));

        let i = inertia(&[1, 1]);
        let t = multiplication_table(&i).unwrap();
        let expected = OrbClass::monomial(&i, &i.element(0), q(int(1), int(1)));
        assert_eq!(t.product(1, 1), &expected);
    }

    #[test]
    fn chen_ruan_products() {
        let i = inertia(&[1, 1, 2]);
        let cr = chen_ruan_table(&i).unwrap();
        assert_eq!(cr.product(3, 3), &OrbClass::basis(&i, &i.element(2)));
        // P * 1_{1/2} is the basis class P 1_{1/2}; dim 0 so it vanishes
        assert!(cr.product(1, 3).is_zero());
        assert!(cr.product(2, 1).is_zero());

        let i = inertia(&[1, 1]);
        assert!(chen_ruan_table(&i).unwrap().product(1, 1).is_zero());

        // a sector of positive dimension: P(2,2) has 1_{1/2} P
        let i = inertia(&[2, 2]);
        let cr = chen_ruan_table(&i).unwrap();
        assert_eq!(cr.product(1, 2), &OrbClass::basis(&i, &i.element(3)));
    }

    #[test]
    fn telescoping_against_matrix_powers() {
        for ws in [&[1u64, 1, 2][..], &[1, 2, 3], &[2, 3, 5], &[1, 1, 4]] {
            let i = inertia(ws);
            let m = p_matrix(&i);
            let mut v = coordinates(&i, &OrbClass::basis(&i, &i.element(0)));
            for power in 0..=2 * i.rank() {
                assert_eq!(
                    v,
                    coordinates(&i, &reduce_p_power(&i, power)),
                    "w={ws:?} P^{power}"
                );
                v = m.apply(&v);
            }
        }
    }
}
