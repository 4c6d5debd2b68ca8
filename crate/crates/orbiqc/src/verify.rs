//! Cross-checks run by `orbiqc verify` and by the acceptance suite.
//!
//! Each check takes one corpus item and returns `Err(detail)` with the first
//! counterexample it finds.

use std::collections::BTreeMap;

use orbiqc_core::arith::{fract, int, uint, Coeff};
use orbiqc_core::intersection::fixtures::{local_matchings, CiFixture, FIXTURES};
use orbiqc_core::intersection::{
    cor12_hypothesis, i_series, k_f_ceiling, k_f_fractional, lemma61_check, local_singularity,
    mirror_data, terminal_check, MirrorCase,
};
use orbiqc_core::jfunction::{extract_v, j_series, matrix_from_j, pf_check};
use orbiqc_core::ring::{
    c_sequence, chen_ruan_table, companion_matrix, multiplication_table, p_matrix, pair_classes,
    presentation, reduce_p_power, s_closed, shift_weights, sigma, to_rescaled_basis,
    top_coefficient,
};
use orbiqc_core::{Inertia, NovikovScalar, OrbClass, Rational};
use rayon::prelude::*;

use crate::report::{schema, FailureJson, Tally, VerifyReport};

pub type CheckResult = Result<(), String>;

/// Nondecreasing weight vectors with `min_len <= length <= max_len` and
/// total at most `max_total`.
pub fn weight_corpus(min_len: usize, max_len: usize, max_total: u64) -> Vec<Vec<u64>> {
    fn extend(
        prefix: &mut Vec<u64>,
        max_len: usize,
        budget: u64,
        out: &mut Vec<Vec<u64>>,
        min_len: usize,
    ) {
        if prefix.len() >= min_len {
            out.push(prefix.clone());
        }
        if prefix.len() == max_len {
            return;
        }
        let start = prefix.last().copied().unwrap_or(1);
        for w in start..=budget {
            prefix.push(w);
            extend(prefix, max_len, budget - w, out, min_len);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), max_len, max_total, &mut out, min_len);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// The shipped corpus: lengths 2 to 4, total at most 10.
pub fn small_corpus() -> Vec<Vec<u64>> {
    weight_corpus(2, 4, 10)
}

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> CheckResult {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

pub fn check_sectors(i: &Inertia) -> CheckResult {
    let w = i.weights();
    let n = uint(w.total());
    ensure(i.rank() as u64 == w.total(), || {
        "rank differs from sum of weights".into()
    })?;
    for (j, s) in i.sectors().iter().enumerate() {
        let direct: Rational = w.iter().map(|x| fract(&(-s.f() * uint(x)))).sum();
        ensure(s.age() == &direct, || {
            format!("age of f={} is {}, expected {direct}", s.f(), s.age())
        })?;
        let telescoped = uint(i.offset(j) as u64) - &n * s.f();
        ensure(s.age() == &telescoped, || {
            format!("age of f={} disagrees with M_j - N f", s.f())
        })?;
        let k = i.involution_index(j);
        ensure(
            i.involution_index(k) == j && i.sector(k).dim() == s.dim(),
            || format!("involution fails at f={}", s.f()),
        )?;
    }
    let top = int(2 * w.n() as i64);
    for a in i.basis() {
        let partners: Vec<_> = i
            .basis()
            .into_iter()
            .filter(|b| i.pairing(&a, b) != int(0))
            .collect();
        ensure(partners.len() == 1, || {
            format!(
                "basis element {} has {} pairing partners",
                a.position,
                partners.len()
            )
        })?;
        let sum = i.orbifold_degree(&a) + i.orbifold_degree(&partners[0]);
        ensure(sum == top, || {
            format!("paired degrees of element {} sum to {sum}", a.position)
        })?;
    }
    Ok(())
}

pub fn check_pf(i: &Inertia, cap: &Rational) -> CheckResult {
    let j = j_series(i, cap).map_err(|e| e.to_string())?;
    let report = pf_check(&j).map_err(|e| e.to_string())?;
    match report.first_failure() {
        None => Ok(()),
        Some(d) => Err(format!("nonzero residual at degree {}", d.degree)),
    }
}

pub fn check_two_derivations(i: &Inertia) -> CheckResult {
    let j = j_series(i, &int(1)).map_err(|e| e.to_string())?;
    let w = i.weights();
    let c = c_sequence(w);
    for k in 0..c.len() {
        let v = extract_v(k, &j).map_err(|e| format!("v_{}: {e}", k + 1))?;
        let expected =
            OrbClass::monomial(i, &i.element(k), NovikovScalar::constant(sigma(w, &c, k)));
        ensure(v == expected, || {
            format!("v_{} differs from sigma P^r 1_c", k + 1)
        })?;
    }
    let derived = matrix_from_j(&j).map_err(|e| e.to_string())?;
    derived
        .expect_equal(&p_matrix(i))
        .map_err(|e| e.to_string())
}

pub fn check_closed_forms(i: &Inertia) -> CheckResult {
    let w = i.weights();
    let c = c_sequence(w);
    for k in 0..c.len() {
        let (a, b) = (sigma(w, &c, k), s_closed(w, c.get(k)));
        ensure(a == b, || format!("sigma_{} = {a} but s(c_j) = {b}", k + 1))?;
    }
    let product = shift_weights(i)
        .iter()
        .fold(NovikovScalar::one(), |acc, r| acc.mul(r));
    let top = top_coefficient(w);
    ensure(product == top, || {
        format!("product of r_i is {product}, expected {top}")
    })?;
    ensure(presentation(i).is_consistent(), || {
        "presentation does not telescope".into()
    })?;
    let pn = reduce_p_power(i, i.rank());
    let expected = OrbClass::monomial(i, &i.element(0), top.clone());
    ensure(pn == expected, || {
        "P^N 1_0 differs from the closed form".into()
    })?;
    // P^N computed by repeated matrix application
    let m = p_matrix(i);
    let mut v = vec![NovikovScalar::zero(); i.rank()];
    v[0] = NovikovScalar::one();
    for _ in 0..i.rank() {
        v = m.apply(&v);
    }
    ensure(
        v[0] == top && v[1..].iter().all(NovikovScalar::is_zero),
        || "P-matrix to the N-th power disagrees with P^N".into(),
    )?;
    let rescaled = to_rescaled_basis(i, &m).map_err(|e| e.to_string())?;
    rescaled
        .expect_equal(&companion_matrix(w))
        .map_err(|e| e.to_string())
}

pub fn check_ring_axioms(i: &Inertia) -> CheckResult {
    let table = multiplication_table(i).map_err(|e| e.to_string())?;
    let basis = i.basis();
    let classes: Vec<OrbClass> = basis.iter().map(|e| OrbClass::basis(i, e)).collect();
    let deg_q = uint(2 * i.weights().total());
    for a in &basis {
        for b in &basis {
            let prod = table.product(a.position, b.position);
            ensure(prod.is_effective(), || {
                format!("e{} * e{} has a negative Q-power", a.position, b.position)
            })?;
            ensure(prod == table.product(b.position, a.position), || {
                format!("e{} * e{} is not commutative", a.position, b.position)
            })?;
            for (pos, coeff) in prod.basis_terms(i) {
                for (e, _) in coeff.terms() {
                    let lhs = i.orbifold_degree(a) + i.orbifold_degree(b);
                    let rhs = i.orbifold_degree(&i.element(pos)) + &deg_q * &e;
                    ensure(lhs == rhs, || {
                        format!("e{} * e{} is not homogeneous", a.position, b.position)
                    })?;
                }
            }
        }
    }
    for x in &classes {
        for y in &classes {
            let xy = table.multiply(i, x, y);
            for z in &classes {
                ensure(
                    table.multiply(i, &xy, z) == table.multiply(i, x, &table.multiply(i, y, z)),
                    || "associativity fails".into(),
                )?;
            }
        }
    }
    if i.sector(0).dim() >= 1 {
        let p = &classes[1];
        for x in &classes {
            let px = table.multiply(i, p, x);
            for y in &classes {
                let py = table.multiply(i, p, y);
                ensure(pair_classes(i, &px, y) == pair_classes(i, x, &py), || {
                    "P o is not self-adjoint for the pairing".into()
                })?;
            }
        }
        // P o agrees with the P-matrix
        let m = p_matrix(i);
        for (k, x) in classes.iter().enumerate() {
            let via_table = crate::report::class_json(i, &table.multiply(i, p, x));
            let mut unit = vec![NovikovScalar::zero(); i.rank()];
            unit[k] = NovikovScalar::one();
            let column = m.apply(&unit);
            let via_matrix: Vec<_> = column
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(pos, c)| crate::report::TermJson {
                    position: pos,
                    coefficient: c.to_string(),
                })
                .collect();
            ensure(via_table == via_matrix, || {
                format!("P * e{k} differs from the P-matrix column")
            })?;
        }
    }
    let cr = chen_ruan_table(i).map_err(|e| e.to_string())?;
    for a in &basis {
        for b in &basis {
            let prod = cr.product(a.position, b.position);
            for (_, coeff) in prod.basis_terms(i) {
                ensure(
                    coeff.as_monomial().is_some_and(|(e, _)| e == int(0)),
                    || "Chen-Ruan product carries Q".into(),
                )?;
            }
        }
    }
    Ok(())
}

pub fn check_k_forms(fx: &CiFixture) -> CheckResult {
    let ci = fx.data();
    for s in ci.ambient().sectors() {
        let (a, b) = (k_f_ceiling(&ci, s.f()), k_f_fractional(&ci, s.f()));
        ensure(a == b, || format!("k_f at {} has forms {a} and {b}", s.f()))?;
    }
    Ok(())
}

pub fn check_classifiers(fx: &CiFixture) -> CheckResult {
    let ci = fx.data();
    let terminal = terminal_check(&ci).map_err(|e| e.to_string())?;
    ensure(terminal.verdict == fx.terminal, || {
        format!(
            "terminal verdict {} but fixture says {}",
            terminal.verdict, fx.terminal
        )
    })?;
    if fx.terminal && ci.k_x() <= 0 {
        ensure(cor12_hypothesis(&ci).verdict, || {
            "terminal with k_X <= 0 but hypothesis fails".into()
        })?;
    }
    if ci.k_x() <= 0 {
        let report = lemma61_check(&ci).map_err(|e| e.to_string())?;
        if let Some(v) = report.violations().first() {
            return Err(format!("inequality fails at f = {}", v.f));
        }
    }
    Ok(())
}

pub fn check_mirror(fx: &CiFixture, cap: &Rational) -> CheckResult {
    let ci = fx.data();
    if ci.k_x() > 0 || !cor12_hypothesis(&ci).verdict || ci.codimension() > ci.weights().n() {
        return Ok(());
    }
    let series = i_series(&ci, cap).map_err(|e| e.to_string())?;
    let m = mirror_data(&ci, &series).map_err(|e| e.to_string())?;
    if m.case == MirrorCase::Zero {
        ensure(
            m.f.constant_term() == Rational::from_integer(1.into()),
            || "F(0) != 1".into(),
        )?;
    }
    Ok(())
}

pub fn check_local_models() -> CheckResult {
    for (name, f, matching) in local_matchings() {
        let fx = orbiqc_core::intersection::fixtures::fixture(name).ok_or("missing fixture")?;
        let ci = fx.data();
        let q = local_singularity(&ci, &f, &matching).map_err(|e| e.to_string())?;
        let box_holds = ci.weight_fraction_sum(&f) > ci.degree_fraction_sum(&f) + int(1);
        ensure(box_holds == (q.first_sum() > int(1)), || {
            format!("{name}: local model disagrees with the fractional inequality at f = {f}")
        })?;
        let sector = terminal_check(&ci).map_err(|e| e.to_string())?;
        let passes = sector.sector(&f).is_some_and(|s| s.passed());
        ensure(passes == q.reid_tai().terminal, || {
            format!("{name}: Reid-Tai on the local model disagrees with the classifier")
        })?;
    }
    Ok(())
}

pub type WeightCheck = fn(&Inertia, &Rational) -> CheckResult;

pub const WEIGHT_CHECKS: &[(&str, WeightCheck)] = &[
    ("sectors", |i, _| check_sectors(i)),
    ("picard-fuchs", check_pf),
    ("two-derivations", |i, _| check_two_derivations(i)),
    ("closed-forms", |i, _| check_closed_forms(i)),
    ("ring-axioms", |i, _| check_ring_axioms(i)),
];

pub type FixtureCheck = fn(&CiFixture, &Rational) -> CheckResult;

pub const FIXTURE_CHECKS: &[(&str, FixtureCheck)] = &[
    ("k-forms", |fx, _| check_k_forms(fx)),
    ("classifiers", |fx, _| check_classifiers(fx)),
    ("mirror-shape", check_mirror),
];

fn label(w: &[u64]) -> String {
    let parts: Vec<String> = w.iter().map(u64::to_string).collect();
    format!("P({})", parts.join(","))
}

/// Runs every check over the weight corpus and the fixtures.
pub fn run(
    corpus_name: &str,
    corpus: &[Vec<u64>],
    cap: &Rational,
    with_fixtures: bool,
) -> VerifyReport {
    let weight_results: Vec<(&str, String, CheckResult)> = corpus
        .par_iter()
        .flat_map_iter(|w| {
            let i = Inertia::from_slice(w).expect("corpus weights are positive");
            WEIGHT_CHECKS
                .iter()
                .map(|(name, check)| (*name, label(w), check(&i, cap)))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut results = weight_results;
    let fixtures: &[CiFixture] = if with_fixtures { FIXTURES } else { &[] };
    for fx in fixtures {
        for (name, check) in FIXTURE_CHECKS {
            results.push((name, fx.name.to_string(), check(fx, cap)));
        }
    }
    if with_fixtures {
        results.push(("local-models", "fixtures".into(), check_local_models()));
    }
    let mut checks: BTreeMap<String, Tally> = BTreeMap::new();
    let mut failures = Vec::new();
    for (name, item, result) in results {
        let tally = checks.entry(name.to_string()).or_default();
        match result {
            Ok(()) => tally.passed += 1,
            Err(detail) => {
                tally.failed += 1;
                failures.push(FailureJson {
                    check: name.to_string(),
                    item,
                    detail,
                });
            }
        }
    }
    VerifyReport {
        schema: schema(),
        corpus: corpus_name.to_string(),
        degree_cap: cap.to_string(),
        weight_vectors: corpus.len(),
        ci_fixtures: fixtures.len(),
        passed: failures.is_empty(),
        checks,
        failures,
    }
}
