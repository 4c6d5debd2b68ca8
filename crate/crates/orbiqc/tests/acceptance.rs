//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Every comparison is exact rational equality.

use std::process::ExitCode;
use std::time::Instant;

use orbiqc::verify::{
    check_closed_forms, check_pf, check_ring_axioms, check_two_derivations, small_corpus,
    CheckResult,
};
use orbiqc_core::arith::{int, rat, uint, Coeff};
use orbiqc_core::intersection::fixtures::{fixture, FIXTURES};
use orbiqc_core::intersection::{
    cor12_hypothesis, i_series, k_f_ceiling, k_f_fractional, k_invariants, lemma61_check,
    mirror_data, reid_tai, terminal_check, CIData, MirrorCase,
};
use orbiqc_core::jfunction::j_series;
use orbiqc_core::ring::{
    c_sequence, chen_ruan_table, multiplication_table, p_matrix, presentation, reduce_p_power,
    s_closed, shift_weights, top_coefficient,
};
use orbiqc_core::{Inertia, NovikovScalar, OrbClass, Rational, SectorPoly, ZLaurent};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn inertia(w: &[u64]) -> Inertia {
    Inertia::from_slice(w).unwrap()
}

fn q(c: Rational, e: Rational) -> NovikovScalar {
    NovikovScalar::monomial(c, &e).unwrap()
}

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> CheckResult {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn over_corpus(check: impl Fn(&Inertia) -> CheckResult) -> CheckResult {
    for w in small_corpus() {
        check(&inertia(&w)).map_err(|e| format!("{w:?}: {e}"))?;
    }
    Ok(())
}

fn picard_fuchs() -> CheckResult {
    let start = Instant::now();
    over_corpus(|i| check_pf(i, &int(3)))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1} s"))
}

fn two_derivations() -> CheckResult {
    over_corpus(check_two_derivations)
}

/// `prod w_i^(-w_i)` by repeated multiplication.
fn top_oracle(w: &[u64]) -> Rational {
    let mut acc = int(1);
    for &x in w {
        for _ in 0..x {
            acc /= uint(x);
        }
    }
    acc
}

fn closed_forms() -> CheckResult {
    over_corpus(|i| {
        check_closed_forms(i)?;
        let w = i.weights().as_slice();
        let expected = q(top_oracle(w), int(1));
        ensure(top_coefficient(i.weights()) == expected, || {
            "top coefficient".into()
        })?;
        let product = shift_weights(i)
            .iter()
            .fold(NovikovScalar::one(), |a, r| a.mul(r));
        ensure(product == expected, || format!("prod r_i = {product}"))?;
        let pn = reduce_p_power(i, i.rank());
        ensure(
            pn == OrbClass::monomial(i, &i.element(0), expected.clone()),
            || "P^N 1_0".into(),
        )
    })
}

/// Coefficients of `1 / prod_{b=1}^d (P + b z)^(n+1)` modulo `P^(n+1)`, by
/// triangular inversion. Entry `k` multiplies `P^k z^(-(n+1)d - k)`.
fn classical_oracle(n: usize, d: u64) -> Vec<Rational> {
    // a[k]: coefficient of P^k z^(m-k) in the product, m = (n+1) d
    let mut a = vec![int(0); n + 1];
    a[0] = int(1);
    for b in 1..=d {
        for _ in 0..=n {
            let mut next = vec![int(0); n + 1];
            for k in 0..=n {
                next[k] += &a[k] * uint(b);
                if k > 0 {
                    next[k] += &a[k - 1];
                }
            }
            a = next;
        }
    }
    let mut inv = vec![int(0); n + 1];
    inv[0] = int(1) / &a[0];
    for k in 1..=n {
        let s: Rational = (1..=k).map(|i| &a[i] * &inv[k - i]).sum();
        inv[k] = -s / &a[0];
    }
    inv
}

fn classical_limit() -> CheckResult {
    for n in 1..=5usize {
        let w = vec![1u64; n + 1];
        let i = inertia(&w);
        let pres = presentation(&i);
        ensure(i.sector_count() == 1 && pres.relations.len() == 1, || {
            format!("n={n}: {} relations", pres.relations.len())
        })?;
        let rel = &pres.relations[0];
        ensure(
            rel.power == n + 1 && rel.coefficient == q(int(1), int(1)),
            || format!("n={n}: relation P^{} = {}", rel.power, rel.coefficient),
        )?;
        ensure(pres.top_coefficient == q(int(1), int(1)), || {
            format!("n={n}: top")
        })?;
        // P generates: e_a * e_b = P^(a+b), folded by P^(n+1) = Q
        let table = multiplication_table(&i).map_err(|e| e.to_string())?;
        for a in 0..=n {
            for b in 0..=n {
                let s = a + b;
                let (pos, e) = if s <= n { (s, 0) } else { (s - n - 1, 1) };
                let expected = OrbClass::monomial(&i, &i.element(pos), q(int(1), int(e)));
                ensure(*table.product(a, b) == expected, || {
                    format!("n={n}: e{a} * e{b}")
                })?;
            }
        }
        let j = j_series(&i, &int(3)).map_err(|e| e.to_string())?;
        for d in 0..=3u64 {
            let inv = classical_oracle(n, d);
            let m = ((n + 1) as i64) * d as i64;
            let coeffs = inv
                .iter()
                .enumerate()
                .map(|(k, c)| ZLaurent::from_terms([(1 - m - k as i64, c.clone())]))
                .collect();
            let expected = SectorPoly::from_coeffs(n, coeffs);
            let term = j
                .term(&uint(d))
                .ok_or_else(|| format!("n={n}: no term at d={d}"))?;
            ensure(term.poly == expected, || format!("n={n}: J term at d={d}"))?;
        }
    }
    Ok(())
}

fn p112() -> CheckResult {
    let i = inertia(&[1, 1, 2]);
    let half = rat(1, 2);
    ensure(s_closed(i.weights(), &half) == half, || "s_{1/2}".into())?;
    let c = c_sequence(i.weights());
    ensure(c.len() == 4 && c.get(3) == &half, || "c-sequence".into())?;
    let m = p_matrix(&i);
    let root = q(half.clone(), half.clone());
    let sub = [NovikovScalar::one(), NovikovScalar::one(), root.clone()];
    for (k, r) in sub.iter().enumerate() {
        ensure(m.get(k + 1, k) == r, || {
            format!("sub-diagonal entry {k} is {}", m.get(k + 1, k))
        })?;
    }
    ensure(m.get(0, 3) == &root, || {
        format!("corner is {}", m.get(0, 3))
    })?;
    let p4 = reduce_p_power(&i, 4);
    ensure(
        p4 == OrbClass::monomial(&i, &i.element(0), q(rat(1, 4), int(1))),
        || "P^4".into(),
    )?;
    let j = j_series(&i, &int(1)).map_err(|e| e.to_string())?;
    let t = j.term(&half).ok_or("no degree-1/2 term")?;
    let expected = SectorPoly::from_coeffs(0, vec![ZLaurent::from_terms([(-2, int(4))])]);
    ensure(
        i.sector(t.sector).f() == &half && t.poly == expected,
        || "degree-1/2 J term".into(),
    )?;
    let cr = chen_ruan_table(&i).map_err(|e| e.to_string())?;
    let twisted = i.element(3).position;
    let p2 = OrbClass::monomial(&i, &i.element(2), NovikovScalar::one());
    ensure(*cr.product(twisted, twisted) == p2, || {
        "1_{1/2} cup 1_{1/2}".into()
    })
}

fn ring_axioms() -> CheckResult {
    over_corpus(check_ring_axioms)
}

fn complete_intersections() -> CheckResult {
    for w in small_corpus() {
        for d1 in 1..=8u64 {
            for d2 in [None, Some(2), Some(3)] {
                let degrees: Vec<u64> = [Some(d1), d2].into_iter().flatten().collect();
                let ci = CIData::from_slices(&w, &degrees, false).map_err(|e| e.to_string())?;
                for s in ci.ambient().sectors() {
                    ensure(
                        k_f_ceiling(&ci, s.f()) == k_f_fractional(&ci, s.f()),
                        || format!("{w:?} {degrees:?}: k_f forms differ at {}", s.f()),
                    )?;
                }
            }
        }
    }
    let passing: Vec<_> = FIXTURES
        .iter()
        .filter(|fx| fx.cy_threefold || fx.name.starts_with("X7"))
        .collect();
    ensure(passing.len() == 5, || {
        format!("{} fixtures expected to pass", passing.len())
    })?;
    for fx in passing {
        let ci = fx.data();
        ensure(cor12_hypothesis(&ci).verdict, || {
            format!("{}: hypothesis fails", fx.name)
        })?;
        let t = terminal_check(&ci).map_err(|e| e.to_string())?;
        ensure(t.verdict, || format!("{}: not terminal", fx.name))?;
    }
    let x7 = fixture("X7 in P(1,1,1,1,1,2)").ok_or("missing X7")?.data();
    let k = k_invariants(&x7).map_err(|e| e.to_string())?;
    ensure(k.k_f.get(&rat(1, 2)) == Some(&int(-2)), || {
        "k_{1/2}(X7)".into()
    })?;
    let x3 = fixture("X3 in P(1,1,1,2)").ok_or("missing X3")?.data();
    ensure(
        !terminal_check(&x3).map_err(|e| e.to_string())?.verdict,
        || "X3 passes the terminal check".into(),
    )?;
    for fx in FIXTURES.iter() {
        let ci = fx.data();
        if ci.quasismooth_assumed() && ci.k_x() <= 0 {
            ensure(
                lemma61_check(&ci).map_err(|e| e.to_string())?.passed(),
                || format!("{}: ceiling inequality", fx.name),
            )?;
        }
    }
    Ok(())
}

/// Ratio of the leading z-powers of the degree-d quintic I-term at P = 0:
/// `prod_{b=1}^{5d} (b z) / prod_{b=1}^{d} (b z)^5`.
fn quintic_oracle(d: u64) -> Rational {
    let mut x = int(1);
    for b in 1..=5 * d {
        x *= uint(b);
    }
    for b in 1..=d {
        for _ in 0..5 {
            x /= uint(b);
        }
    }
    x
}

fn mirror() -> CheckResult {
    let frozen = [1i64, 120, 113400, 168168000];
    let x5 = CIData::from_slices(&[1; 5], &[5], true).map_err(|e| e.to_string())?;
    let m = mirror_data(&x5, &i_series(&x5, &int(3)).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    for (d, &f) in frozen.iter().enumerate() {
        let oracle = quintic_oracle(d as u64);
        ensure(oracle == int(f), || {
            format!("oracle gives {oracle} at d={d}")
        })?;
        let got = m.f.coefficient(&uint(d as u64));
        ensure(got == oracle, || format!("X5: F_{d} = {got}"))?;
    }
    let x4 = CIData::from_slices(&[1; 5], &[4], true).map_err(|e| e.to_string())?;
    let m = mirror_data(&x4, &i_series(&x4, &int(3)).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(
        m.case == MirrorCase::MinusOne && m.s == q(int(24), int(1)),
        || format!("X4: s = {}", m.s),
    )?;
    let x2 = CIData::from_slices(&[1; 4], &[2], true).map_err(|e| e.to_string())?;
    let m = mirror_data(&x2, &i_series(&x2, &int(3)).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(m.case == MirrorCase::BelowMinusOne, || "X2: case".into())?;
    ensure(m.f == NovikovScalar::one(), || format!("X2: F = {}", m.f))?;
    ensure(m.z0_quotient.iter().all(NovikovScalar::is_zero), || {
        "X2: z^0 quotient".into()
    })
}

fn reid_tai_criterion() -> CheckResult {
    let terminal = |r, a: &[i64]| {
        reid_tai(r, a)
            .map(|x| x.terminal)
            .map_err(|e| e.to_string())
    };
    ensure(!terminal(2, &[1, 1])?, || "1/2(1,1)".into())?;
    ensure(!terminal(3, &[1, 2])?, || "1/3(1,2)".into())?;
    ensure(terminal(2, &[1, 1, 1])?, || "1/2(1,1,1)".into())?;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..2000 {
        let r: u64 = rng.gen_range(2..=12);
        let len = rng.gen_range(1..=4);
        let a: Vec<i64> = (0..len).map(|_| rng.gen_range(0..2 * r as i64)).collect();
        let base = terminal(r, &a)?;
        let mut shuffled = a.clone();
        for k in (1..shuffled.len()).rev() {
            shuffled.swap(k, rng.gen_range(0..=k));
        }
        ensure(terminal(r, &shuffled)? == base, || {
            format!("1/{r}{a:?} under permutation")
        })?;
        let unit = rng.gen_range(1..r);
        if num_integer::gcd(unit, r) == 1 {
            let scaled: Vec<i64> = a.iter().map(|x| x * unit as i64).collect();
            ensure(terminal(r, &scaled)? == base, || {
                format!("1/{r}{a:?} scaled by {unit}")
            })?;
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> CheckResult);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 Picard-Fuchs annihilation, corpus, d <= 3", picard_fuchs),
        ("2 two derivations of P o agree, corpus", two_derivations),
        (
            "3 closed forms sigma = s, prod r = Q prod w^-w, P^N",
            closed_forms,
        ),
        (
            "4 classical limit P(1,...,1), n <= 5, d <= 3",
            classical_limit,
        ),
        ("5 P(1,1,2) fixture", p112),
        ("6 ring axioms and grading, corpus", ring_axioms),
        (
            "7 complete intersections: k_f forms, classifiers, ceilings",
            complete_intersections,
        ),
        ("8 mirror data for X5, X4, X2 in degree <= 3", mirror),
        (
            "9 Reid-Tai examples and invariance, r <= 12",
            reid_tai_criterion,
        ),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS criterion {name} (tolerance 0, exact)"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name} (tolerance 0, exact): {e}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
