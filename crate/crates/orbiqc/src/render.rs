//! Plain-text and LaTeX renderings of the JSON reports.

use std::fmt::Write;

use num_traits::{One, Signed, Zero};
use orbiqc_core::{NovikovScalar, Rational, Result};

use crate::report::{
    BatchClassifyReport, CiClassification, ClassifyReport, IfunReport, JfunReport, PolyJson,
    ReidTaiJson, RingReport, SectorCheckJson, SectorsReport, SeriesTermJson, TableJson,
    VerifyReport,
};

/// Rewrites every Novikov variable `Q` as the token `Qe^t`, so that `Q^(1/2)`
/// reads `(Qe^t)^(1/2)`. Only a `Q` standing alone is touched.
pub fn qet(text: &str) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len());
    for (k, &c) in chars.iter().enumerate() {
        let word = |x: Option<&char>| x.is_some_and(|x| x.is_alphanumeric() || *x == '_');
        let alone = c == 'Q'
            && !word(k.checked_sub(1).and_then(|j| chars.get(j)))
            && !word(chars.get(k + 1));
        if !alone {
            out.push(c);
        } else if chars.get(k + 1) == Some(&'^') {
            out.push_str("(Qe^t)");
        } else {
            out.push_str("Qe^t");
        }
    }
    out
}

fn line(out: &mut String, s: impl AsRef<str>) {
    out.push_str(s.as_ref());
    out.push('\n');
}

fn matrix_text(out: &mut String, rows: &[Vec<String>]) {
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
        line(out, format!("  [ {} ]", cells.join("  ")));
    }
}

fn class_text(basis: &[String], terms: &[crate::report::TermJson]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|t| match t.coefficient.as_str() {
            "1" => basis[t.position].clone(),
            c if c.contains(' ') => format!("({c}) {}", basis[t.position]),
            c => format!("{c} {}", basis[t.position]),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn table_text(out: &mut String, basis: &[String], table: &TableJson) {
    for (a, row) in table.iter().enumerate() {
        for (b, prod) in row.iter().enumerate().skip(a) {
            line(
                out,
                format!(
                    "  {} * {} = {}",
                    basis[a],
                    basis[b],
                    class_text(basis, prod)
                ),
            );
        }
    }
}

pub fn sectors_text(r: &SectorsReport) -> String {
    let mut out = String::new();
    line(&mut out, format!("weights: {:?}", r.weights));
    line(&mut out, format!("rank: {}", r.rank));
    line(&mut out, "sectors:");
    for s in &r.sectors {
        line(
            &mut out,
            format!(
                "  f={:<6} dim={} age={:<6} subweights={:?}",
                s.f, s.dim, s.age, s.subweights
            ),
        );
    }
    line(&mut out, "basis:");
    for b in &r.basis {
        line(
            &mut out,
            format!("  e{} = {:<14} degree {}", b.position, b.label, b.degree),
        );
    }
    line(&mut out, "pairing:");
    matrix_text(&mut out, &r.pairing);
    out
}

pub fn ring_text(r: &RingReport) -> String {
    let mut out = String::new();
    line(&mut out, format!("weights: {:?}", r.weights));
    line(&mut out, format!("basis: {}", r.basis.join(", ")));
    line(&mut out, "P o in this basis:");
    matrix_text(&mut out, &r.p_matrix);
    line(&mut out, "companion form:");
    matrix_text(&mut out, &r.companion);
    line(&mut out, "relations:");
    for rel in &r.relations {
        line(&mut out, format!("  {}", rel.text));
    }
    line(&mut out, format!("  {}", r.top_relation));
    line(&mut out, "quantum products:");
    table_text(&mut out, &r.basis, &r.multiplication);
    line(&mut out, "Chen-Ruan products:");
    table_text(&mut out, &r.basis, &r.chen_ruan);
    out
}

fn laurent_text(terms: &[(i64, String)]) -> String {
    terms
        .iter()
        .map(|(k, c)| {
            let z = match k {
                0 => return c.clone(),
                1 => "z".to_string(),
                k => format!("z^({k})"),
            };
            match c.as_str() {
                "1" => z,
                "-1" => format!("-{z}"),
                c => format!("{c}*{z}"),
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn poly_text(p: &PolyJson) -> String {
    let parts: Vec<String> = p
        .iter()
        .enumerate()
        .filter(|(_, terms)| !terms.is_empty())
        .map(|(k, terms)| {
            let c = laurent_text(terms);
            match k {
                0 => format!("({c})"),
                1 => format!("({c}) P"),
                k => format!("({c}) P^{k}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn series_text(out: &mut String, series: &[SeriesTermJson]) {
    for t in series {
        let q = match t.degree.as_str() {
            "0" => String::new(),
            "1" => "Q ".into(),
            d => format!("Q^({d}) "),
        };
        line(
            out,
            format!(
                "  d={:<5} {q}[{}] 1_{{{}}}",
                t.degree,
                poly_text(&t.coefficients),
                t.sector
            ),
        );
    }
}

pub fn jfun_text(r: &JfunReport) -> String {
    let mut out = String::new();
    line(&mut out, format!("weights: {:?}", r.weights));
    line(&mut out, format!("degree cap: {}", r.degree_cap));
    line(&mut out, "J-series:");
    series_text(&mut out, &r.series);
    if let Some(pf) = &r.pf {
        for d in pf.degrees.iter().filter(|d| !d.passed) {
            line(
                &mut out,
                format!(
                    "pf residual at d={}: {}",
                    d.degree,
                    poly_text(d.residual.as_ref().unwrap_or(&Vec::new()))
                ),
            );
        }
        line(
            &mut out,
            format!("pf: {}", if pf.passed { "PASS" } else { "FAIL" }),
        );
    }
    if let Some(m) = &r.derived_matrix {
        line(&mut out, "P o derived from J:");
        matrix_text(&mut out, m);
    }
    if let Some(ok) = r.derived_matches_closed_form {
        line(
            &mut out,
            format!("derived ring: {}", if ok { "PASS" } else { "FAIL" }),
        );
    }
    out
}

pub fn ifun_text(r: &IfunReport) -> String {
    let mut out = String::new();
    line(
        &mut out,
        format!(
            "weights: {:?}  degrees: {:?}  k_X = {}",
            r.weights, r.degrees, r.k_x
        ),
    );
    line(&mut out, format!("degree cap: {}", r.degree_cap));
    line(&mut out, "I-series:");
    series_text(&mut out, &r.series);
    if let Some(m) = &r.mirror {
        line(&mut out, format!("mirror data ({}):", m.case));
        line(&mut out, format!("  F = {}", m.f));
        line(&mut out, format!("  g = {}", m.g));
        line(&mut out, format!("  s = {}", m.s));
        if let Some(s) = &m.s_closed_form {
            line(&mut out, format!("  s (closed form) = {s}"));
        }
        if let Some(t) = &m.tau {
            line(&mut out, format!("  tau = {t}"));
        }
    }
    if let Some(e) = &r.mirror_error {
        line(&mut out, format!("mirror data unavailable: {e}"));
    }
    out
}

fn checks_text(out: &mut String, title: &str, checks: &[SectorCheckJson]) {
    line(out, title);
    for c in checks {
        let verdict = match &c.clause {
            Some(clause) => format!("ok ({clause})"),
            None => "FAILS".into(),
        };
        line(
            out,
            format!(
                "  f={:<6} k_f={:<5} #int d={} #int w={} sum<fw>={} sum<fd>={}  {verdict}",
                c.f,
                c.k_f,
                c.integral_degrees,
                c.integral_weights,
                c.weight_fraction_sum,
                c.degree_fraction_sum
            ),
        );
    }
}

fn classification_text(out: &mut String, c: &CiClassification) {
    line(
        out,
        format!("weights: {:?}  degrees: {:?}", c.weights, c.degrees),
    );
    line(out, format!("k_X = {}", c.k_x));
    let kf: Vec<String> = c
        .k_f
        .iter()
        .map(|(f, k)| format!("k_{{{f}}} = {k}"))
        .collect();
    line(out, kf.join(", "));
    checks_text(out, "sector hypothesis:", &c.cor12);
    line(out, format!("verdict_cor12: {}", c.verdict_cor12));
    match (c.terminal, &c.terminal_sectors) {
        (Some(t), Some(sectors)) => {
            checks_text(out, "terminal check:", sectors);
            line(out, format!("terminal: {t}"));
        }
        _ => line(out, "terminal: not checked (input not assumed quasismooth)"),
    }
    if let Some(l) = &c.lemma61 {
        for e in l
            .entries
            .iter()
            .filter(|e| !e.holds || e.strict == Some(false))
        {
            line(
                out,
                format!(
                    "  ceiling inequality fails at f={}: {} vs {}",
                    e.f, e.lhs, e.bound
                ),
            );
        }
        line(
            out,
            format!(
                "ceiling inequality: {}",
                if l.passed { "PASS" } else { "FAIL" }
            ),
        );
    }
}

fn reid_tai_text(out: &mut String, r: &ReidTaiJson) {
    let a: Vec<String> = r.weights.iter().map(u64::to_string).collect();
    line(out, format!("1/{}({}):", r.r, a.join(",")));
    line(out, format!("  well-formed: {}", r.well_formed));
    if let Some(k) = r.failing_k {
        line(out, format!("  sum <k a_i / r> <= 1 at k = {k}"));
    }
    line(out, format!("  terminal: {}", r.terminal));
}

pub fn classify_text(r: &ClassifyReport) -> String {
    let mut out = String::new();
    if let Some(c) = &r.ci {
        classification_text(&mut out, c);
    }
    if let Some(rt) = &r.reid_tai {
        reid_tai_text(&mut out, rt);
    }
    out
}

pub fn batch_text(r: &BatchClassifyReport) -> String {
    let mut out = String::new();
    for (k, c) in r.reports.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        classification_text(&mut out, c);
    }
    out
}

pub fn verify_text(r: &VerifyReport) -> String {
    let mut out = String::new();
    line(
        &mut out,
        format!(
            "corpus {}: {} weight vectors, {} complete intersections, degree cap {}",
            r.corpus, r.weight_vectors, r.ci_fixtures, r.degree_cap
        ),
    );
    for (name, t) in &r.checks {
        let status = if t.failed == 0 { "PASS" } else { "FAIL" };
        line(
            &mut out,
            format!(
                "  {name:<16} {status}  ({} passed, {} failed)",
                t.passed, t.failed
            ),
        );
    }
    if let Some(f) = r.failures.first() {
        line(
            &mut out,
            format!(
                "first counterexample: {} on {}: {}",
                f.check, f.item, f.detail
            ),
        );
    }
    line(
        &mut out,
        if r.passed {
            "all invariants PASS"
        } else {
            "invariants FAIL"
        },
    );
    out
}

fn rational_latex(c: &Rational) -> String {
    if c.is_integer() {
        c.to_string()
    } else {
        format!(
            "{}\\frac{{{}}}{{{}}}",
            if c.is_negative() { "-" } else { "" },
            c.numer().abs(),
            c.denom()
        )
    }
}

/// `\frac{1}{2} Q^{1/2}`, or with `qet` set, `\frac{1}{2} Q^{1/2} e^{t/2}`.
pub fn scalar_latex(x: &NovikovScalar, qet: bool) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in x.terms().enumerate() {
        if k > 0 {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        } else if c.is_negative() {
            out.push('-');
        }
        let magnitude = c.abs();
        if e.is_zero() {
            out.push_str(&rational_latex(&magnitude));
            continue;
        }
        if !magnitude.is_one() {
            let _ = write!(out, "{} ", rational_latex(&magnitude));
        }
        let (q, t) = if e.is_one() {
            ("Q".to_string(), "t".to_string())
        } else if e.is_integer() {
            (format!("Q^{{{e}}}"), format!("{e}t"))
        } else {
            let p = if e.numer().is_one() {
                String::new()
            } else {
                e.numer().to_string()
            };
            (format!("Q^{{{e}}}"), format!("{p}t/{}", e.denom()))
        };
        out.push_str(&q);
        if qet {
            let _ = write!(out, " e^{{{t}}}");
        }
    }
    out
}

fn sector_latex(f: &str) -> String {
    match f.split_once('/') {
        Some((p, q)) => format!("\\mathbf{{1}}_{{{p}/{q}}}"),
        None => format!("\\mathbf{{1}}_{{{f}}}"),
    }
}

pub fn ring_latex(r: &RingReport, qet: bool) -> Result<String> {
    let mut out = String::new();
    line(&mut out, "\\[");
    line(&mut out, "P \\circ = \\begin{pmatrix}");
    let rows: Vec<String> = r
        .p_matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.parse::<NovikovScalar>().map(|s| scalar_latex(&s, qet)))
                .collect::<Result<Vec<_>>>()
                .map(|cells| format!("  {}", cells.join(" & ")))
        })
        .collect::<Result<_>>()?;
    line(&mut out, rows.join(" \\\\\n"));
    line(&mut out, "\\end{pmatrix}");
    line(&mut out, "\\]");
    line(&mut out, "\\begin{align*}");
    let mut rels: Vec<String> = Vec::new();
    for rel in &r.relations {
        let c: NovikovScalar = rel.coefficient.parse()?;
        let coeff = match scalar_latex(&c, qet) {
            s if s == "1" => String::new(),
            s if s.contains(" + ") || s.contains(" - ") => format!("\\left({s}\\right) "),
            s => format!("{s} "),
        };
        rels.push(format!(
            "  P^{{{}}} {} &= {coeff}{}",
            rel.power,
            sector_latex(&rel.sector),
            sector_latex(&rel.target)
        ));
    }
    let top: NovikovScalar = r.top_coefficient.parse()?;
    rels.push(format!("  P^{{{}}} &= {}", r.rank, scalar_latex(&top, qet)));
    line(&mut out, rels.join(" \\\\\n"));
    line(&mut out, "\\end{align*}");
    Ok(out)
}

pub fn sectors_latex(r: &SectorsReport) -> String {
    let mut out = String::new();
    line(&mut out, "\\begin{tabular}{cccc}");
    line(&mut out, "$f$ & $\\dim$ & age & weights \\\\ \\hline");
    for s in &r.sectors {
        let f: Rational = orbiqc_core::arith::parse_rational(&s.f).unwrap_or_default();
        let age: Rational = orbiqc_core::arith::parse_rational(&s.age).unwrap_or_default();
        let sub: Vec<String> = s.subweights.iter().map(u64::to_string).collect();
        line(
            &mut out,
            format!(
                "${}$ & {} & ${}$ & $({})$ \\\\",
                rational_latex(&f),
                s.dim,
                rational_latex(&age),
                sub.join(",")
            ),
        );
    }
    line(&mut out, "\\end{tabular}");
    out
}
