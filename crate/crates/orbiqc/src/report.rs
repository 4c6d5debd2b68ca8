//! JSON report types.
//!
//! Rationals and Novikov scalars travel as strings in their canonical text
//! form (`"3/2"`, `"1/2*Q^(1/2)"`), never as floats. Each report can be
//! turned back into the core values it was built from.

use std::collections::BTreeMap;
use std::fmt::Display;

use orbiqc_core::arith::parse_rational;
use orbiqc_core::intersection::{
    CIData, ClassifierReport, Clause, KInvariants, Lemma61Entry, Lemma61Report, MirrorCase,
    MirrorData, ReidTaiReport, SectorCheck,
};
use orbiqc_core::jfunction::{JSeries, JTerm, PfReport};
use orbiqc_core::ring::{
    chen_ruan_table, companion_matrix, multiplication_table, p_matrix, presentation,
    MultiplicationTable, QuantumMatrix, RingPresentation,
};
use orbiqc_core::{
    BasisElement, Error, Inertia, NovikovScalar, OrbClass, Rational, Result, SectorPoly, Weights,
    ZLaurent,
};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "orbiqc/1";

pub fn schema() -> String {
    SCHEMA.to_string()
}

fn text<T: Display>(x: &T) -> String {
    x.to_string()
}

fn scalar(s: &str) -> Result<NovikovScalar> {
    s.parse()
}

fn check_schema(s: &str) -> Result<()> {
    if s != SCHEMA {
        return Err(Error::Parse(format!("unsupported schema {s:?}")));
    }
    Ok(())
}

/// `1_{f}`, `P 1_{f}`, `P^2 1_{f}`.
pub fn basis_label(inertia: &Inertia, e: &BasisElement) -> String {
    let f = inertia.sector(e.sector).f();
    match e.p {
        0 => format!("1_{{{f}}}"),
        1 => format!("P 1_{{{f}}}"),
        p => format!("P^{p} 1_{{{f}}}"),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SectorEntry {
    pub f: String,
    pub dim: usize,
    pub age: String,
    pub subweights: Vec<u64>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct BasisEntry {
    pub position: usize,
    pub sector: String,
    pub p: usize,
    pub degree: String,
    pub label: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SectorsReport {
    pub schema: String,
    pub weights: Vec<u64>,
    pub rank: usize,
    #[serde(rename = "F")]
    pub sectors: Vec<SectorEntry>,
    pub basis: Vec<BasisEntry>,
    pub pairing: Vec<Vec<String>>,
}

impl SectorsReport {
    pub fn new(inertia: &Inertia) -> Self {
        SectorsReport {
            schema: schema(),
            weights: inertia.weights().as_slice().to_vec(),
            rank: inertia.rank(),
            sectors: inertia
                .sectors()
                .iter()
                .map(|s| SectorEntry {
                    f: text(s.f()),
                    dim: s.dim(),
                    age: text(s.age()),
                    subweights: s.subweights().to_vec(),
                })
                .collect(),
            basis: inertia
                .basis()
                .iter()
                .map(|e| BasisEntry {
                    position: e.position,
                    sector: text(inertia.sector(e.sector).f()),
                    p: e.p,
                    degree: text(&inertia.orbifold_degree(e)),
                    label: basis_label(inertia, e),
                })
                .collect(),
            pairing: inertia
                .pairing_matrix()
                .iter()
                .map(|row| row.iter().map(text).collect())
                .collect(),
        }
    }

    pub fn inertia(&self) -> Result<Inertia> {
        check_schema(&self.schema)?;
        Ok(Inertia::new(Weights::new(self.weights.clone())?))
    }

    pub fn pairing_matrix(&self) -> Result<Vec<Vec<Rational>>> {
        self.pairing
            .iter()
            .map(|row| row.iter().map(|x| parse_rational(x)).collect())
            .collect()
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TermJson {
    pub position: usize,
    pub coefficient: String,
}

pub fn class_json(inertia: &Inertia, x: &OrbClass) -> Vec<TermJson> {
    x.basis_terms(inertia)
        .into_iter()
        .map(|(position, c)| TermJson {
            position,
            coefficient: text(&c),
        })
        .collect()
}

pub fn class_from_json(inertia: &Inertia, terms: &[TermJson]) -> Result<OrbClass> {
    terms.iter().try_fold(OrbClass::zero(), |acc, t| {
        if t.position >= inertia.rank() {
            return Err(Error::IndexOutOfRange {
                index: t.position,
                len: inertia.rank(),
            });
        }
        let e = inertia.element(t.position);
        Ok(acc.add(&OrbClass::monomial(inertia, &e, scalar(&t.coefficient)?)))
    })
}

pub fn matrix_json(m: &QuantumMatrix) -> Vec<Vec<String>> {
    m.rows()
        .iter()
        .map(|row| row.iter().map(text).collect())
        .collect()
}

pub fn matrix_from_json(rows: &[Vec<String>]) -> Result<QuantumMatrix> {
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(|x| scalar(x)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    QuantumMatrix::from_rows(parsed)
}

pub type TableJson = Vec<Vec<Vec<TermJson>>>;

pub fn table_json(inertia: &Inertia, t: &MultiplicationTable) -> TableJson {
    t.rows()
        .iter()
        .map(|row| row.iter().map(|x| class_json(inertia, x)).collect())
        .collect()
}

pub fn table_from_json(inertia: &Inertia, t: &TableJson) -> Result<MultiplicationTable> {
    let products = t
        .iter()
        .map(|row| row.iter().map(|x| class_from_json(inertia, x)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    MultiplicationTable::from_products(products)
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct RelationJson {
    pub sector: String,
    pub power: usize,
    pub coefficient: String,
    pub target: String,
    pub text: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct RingReport {
    pub schema: String,
    pub weights: Vec<u64>,
    pub rank: usize,
    pub basis: Vec<String>,
    pub p_matrix: Vec<Vec<String>>,
    pub companion: Vec<Vec<String>>,
    pub relations: Vec<RelationJson>,
    pub top_relation: String,
    pub top_coefficient: String,
    pub multiplication: TableJson,
    pub chen_ruan: TableJson,
}

impl RingReport {
    pub fn new(inertia: &Inertia) -> Result<Self> {
        let pres = presentation(inertia);
        let f = |j: usize| inertia.sector(j).f().clone();
        let relations = pres
            .relations
            .iter()
            .map(|r| RelationJson {
                sector: text(&f(r.sector)),
                power: r.power,
                coefficient: text(&r.coefficient),
                target: text(&f(r.target)),
                text: format!(
                    "P^{} 1_{{{}}} = {} 1_{{{}}}",
                    r.power,
                    f(r.sector),
                    r.coefficient,
                    f(r.target)
                ),
            })
            .collect();
        Ok(RingReport {
            schema: schema(),
            weights: inertia.weights().as_slice().to_vec(),
            rank: inertia.rank(),
            basis: inertia
                .basis()
                .iter()
                .map(|e| basis_label(inertia, e))
                .collect(),
            p_matrix: matrix_json(&p_matrix(inertia)),
            companion: matrix_json(&companion_matrix(inertia.weights())),
            relations,
            top_relation: format!("P^{} = {}", pres.top_power, pres.top_coefficient),
            top_coefficient: text(&pres.top_coefficient),
            multiplication: table_json(inertia, &multiplication_table(inertia)?),
            chen_ruan: table_json(inertia, &chen_ruan_table(inertia)?),
        })
    }

    pub fn inertia(&self) -> Result<Inertia> {
        check_schema(&self.schema)?;
        Ok(Inertia::new(Weights::new(self.weights.clone())?))
    }

    pub fn p_matrix(&self) -> Result<QuantumMatrix> {
        matrix_from_json(&self.p_matrix)
    }

    pub fn companion(&self) -> Result<QuantumMatrix> {
        matrix_from_json(&self.companion)
    }

    pub fn presentation(&self, inertia: &Inertia) -> Result<RingPresentation> {
        let relations = self
            .relations
            .iter()
            .map(|r| {
                Ok(orbiqc_core::ring::Relation {
                    sector: inertia.require_sector(&parse_rational(&r.sector)?)?,
                    power: r.power,
                    coefficient: scalar(&r.coefficient)?,
                    target: inertia.require_sector(&parse_rational(&r.target)?)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RingPresentation {
            relations,
            top_power: self.rank,
            top_coefficient: scalar(&self.top_coefficient)?,
        })
    }

    pub fn multiplication(&self, inertia: &Inertia) -> Result<MultiplicationTable> {
        table_from_json(inertia, &self.multiplication)
    }

    pub fn chen_ruan(&self, inertia: &Inertia) -> Result<MultiplicationTable> {
        table_from_json(inertia, &self.chen_ruan)
    }
}

/// `[z-power, "p/q"]` pairs for each power of `P`.
pub type PolyJson = Vec<Vec<(i64, String)>>;

pub fn poly_json(p: &SectorPoly<ZLaurent>) -> PolyJson {
    p.coeffs()
        .iter()
        .map(|c| c.terms().map(|(k, x)| (k, text(x))).collect())
        .collect()
}

pub fn poly_from_json(cap: usize, p: &PolyJson) -> Result<SectorPoly<ZLaurent>> {
    if p.len() != cap + 1 {
        return Err(Error::Parse(format!(
            "expected {} P-coefficients, found {}",
            cap + 1,
            p.len()
        )));
    }
    let coeffs = p
        .iter()
        .map(|terms| {
            let parsed = terms
                .iter()
                .map(|(k, x)| Ok((*k, parse_rational(x)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(ZLaurent::from_terms(parsed))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SectorPoly::from_coeffs(cap, coeffs))
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SeriesTermJson {
    pub degree: String,
    pub sector: String,
    pub coefficients: PolyJson,
}

pub fn series_json(s: &JSeries) -> Vec<SeriesTermJson> {
    let inertia = s.inertia();
    s.terms()
        .map(|(d, t)| SeriesTermJson {
            degree: text(d),
            sector: text(inertia.sector(t.sector).f()),
            coefficients: poly_json(&t.poly),
        })
        .collect()
}

pub fn series_from_json(
    inertia: &Inertia,
    degree_cap: &str,
    terms: &[SeriesTermJson],
) -> Result<JSeries> {
    let mut out = BTreeMap::new();
    for t in terms {
        let d = parse_rational(&t.degree)?;
        let sector = inertia.require_sector(&parse_rational(&t.sector)?)?;
        if inertia.degree_sector(&d)? != sector {
            return Err(Error::Parse(format!(
                "degree {d} does not live in sector {}",
                t.sector
            )));
        }
        let poly = poly_from_json(inertia.sector(sector).dim(), &t.coefficients)?;
        out.insert(d, JTerm { sector, poly });
    }
    Ok(JSeries::from_terms(
        inertia.clone(),
        parse_rational(degree_cap)?,
        out,
    ))
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PfDegreeJson {
    pub degree: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<PolyJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PfJson {
    pub passed: bool,
    pub degrees: Vec<PfDegreeJson>,
}

impl PfJson {
    pub fn new(r: &PfReport) -> Self {
        PfJson {
            passed: r.passed(),
            degrees: r
                .degrees
                .iter()
                .map(|d| PfDegreeJson {
                    degree: text(&d.degree),
                    passed: d.passed(),
                    residual: d.residual.as_ref().map(poly_json),
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct JfunReport {
    pub schema: String,
    pub weights: Vec<u64>,
    pub degree_cap: String,
    pub series: Vec<SeriesTermJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pf: Option<PfJson>,
    /// Matrix of `P o` rebuilt from the series, when requested.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub derived_matrix: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub derived_matches_closed_form: Option<bool>,
}

impl JfunReport {
    pub fn series(&self) -> Result<JSeries> {
        check_schema(&self.schema)?;
        let inertia = Inertia::new(Weights::new(self.weights.clone())?);
        series_from_json(&inertia, &self.degree_cap, &self.series)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct MirrorJson {
    pub case: String,
    pub degree_cap: String,
    #[serde(rename = "F")]
    pub f: String,
    pub g: String,
    pub s: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s_closed_form: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tau: Option<String>,
    pub z1_quotient: Vec<String>,
    pub z0_quotient: Vec<String>,
    pub twisted_z1: Vec<TermJson>,
    pub twisted_z0: Vec<TermJson>,
}

fn case_from_name(s: &str) -> Result<MirrorCase> {
    [
        MirrorCase::BelowMinusOne,
        MirrorCase::MinusOne,
        MirrorCase::Zero,
    ]
    .into_iter()
    .find(|c| c.name() == s)
    .ok_or_else(|| Error::Parse(format!("unknown mirror case {s:?}")))
}

impl MirrorJson {
    pub fn new(inertia: &Inertia, m: &MirrorData) -> Self {
        MirrorJson {
            case: m.case.name().to_string(),
            degree_cap: text(&m.degree_cap),
            f: text(&m.f),
            g: text(&m.g),
            s: text(&m.s),
            s_closed_form: m.s_closed_form.as_ref().map(text),
            tau: m.tau.as_ref().map(text),
            z1_quotient: m.z1_quotient.iter().map(text).collect(),
            z0_quotient: m.z0_quotient.iter().map(text).collect(),
            twisted_z1: class_json(inertia, &m.twisted_z1),
            twisted_z0: class_json(inertia, &m.twisted_z0),
        }
    }

    pub fn to_core(&self, inertia: &Inertia) -> Result<MirrorData> {
        let list = |v: &[String]| v.iter().map(|x| scalar(x)).collect::<Result<Vec<_>>>();
        Ok(MirrorData {
            case: case_from_name(&self.case)?,
            degree_cap: parse_rational(&self.degree_cap)?,
            z1_quotient: list(&self.z1_quotient)?,
            z0_quotient: list(&self.z0_quotient)?,
            twisted_z1: class_from_json(inertia, &self.twisted_z1)?,
            twisted_z0: class_from_json(inertia, &self.twisted_z0)?,
            f: scalar(&self.f)?,
            g: scalar(&self.g)?,
            s: scalar(&self.s)?,
            s_closed_form: self.s_closed_form.as_deref().map(scalar).transpose()?,
            tau: self.tau.as_deref().map(scalar).transpose()?,
        })
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct IfunReport {
    pub schema: String,
    pub weights: Vec<u64>,
    pub degrees: Vec<u64>,
    #[serde(rename = "k_X")]
    pub k_x: i64,
    pub degree_cap: String,
    pub series: Vec<SeriesTermJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mirror: Option<MirrorJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mirror_error: Option<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SectorCheckJson {
    pub f: String,
    pub k_f: String,
    pub integral_degrees: usize,
    pub integral_weights: usize,
    pub weight_fraction_sum: String,
    pub degree_fraction_sum: String,
    pub clause: Option<String>,
}

fn clause_from_name(s: &str) -> Result<Clause> {
    [
        Clause::Counts,
        Clause::CanonicalBelowMinusOne,
        Clause::FractionalInequality,
    ]
    .into_iter()
    .find(|c| c.name() == s)
    .ok_or_else(|| Error::Parse(format!("unknown clause {s:?}")))
}

impl SectorCheckJson {
    pub fn new(c: &SectorCheck) -> Self {
        SectorCheckJson {
            f: text(&c.f),
            k_f: text(&c.k_f),
            integral_degrees: c.integral_degrees,
            integral_weights: c.integral_weights,
            weight_fraction_sum: text(&c.weight_fraction_sum),
            degree_fraction_sum: text(&c.degree_fraction_sum),
            clause: c.clause.map(|c| c.name().to_string()),
        }
    }

    pub fn to_core(&self) -> Result<SectorCheck> {
        Ok(SectorCheck {
            f: parse_rational(&self.f)?,
            k_f: parse_rational(&self.k_f)?,
            integral_degrees: self.integral_degrees,
            integral_weights: self.integral_weights,
            weight_fraction_sum: parse_rational(&self.weight_fraction_sum)?,
            degree_fraction_sum: parse_rational(&self.degree_fraction_sum)?,
            clause: self.clause.as_deref().map(clause_from_name).transpose()?,
        })
    }
}

fn classifier_from_json(
    sectors: &[SectorCheckJson],
    verdict: bool,
    quasismooth: bool,
) -> Result<ClassifierReport> {
    Ok(ClassifierReport {
        sectors: sectors
            .iter()
            .map(SectorCheckJson::to_core)
            .collect::<Result<_>>()?,
        verdict,
        assumes_quasismooth: quasismooth,
    })
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct Lemma61Json {
    pub passed: bool,
    pub entries: Vec<Lemma61EntryJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct Lemma61EntryJson {
    pub f: String,
    pub lhs: String,
    pub bound: String,
    pub holds: bool,
    pub strict: Option<bool>,
}

impl Lemma61Json {
    pub fn new(r: &Lemma61Report) -> Self {
        Lemma61Json {
            passed: r.passed(),
            entries: r
                .entries
                .iter()
                .map(|e| Lemma61EntryJson {
                    f: text(&e.f),
                    lhs: text(&e.lhs),
                    bound: text(&e.bound),
                    holds: e.holds,
                    strict: e.strict,
                })
                .collect(),
        }
    }

    pub fn to_core(&self) -> Result<Lemma61Report> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                Ok(Lemma61Entry {
                    f: parse_rational(&e.f)?,
                    lhs: parse_rational(&e.lhs)?,
                    bound: parse_rational(&e.bound)?,
                    holds: e.holds,
                    strict: e.strict,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Lemma61Report { entries })
    }
}

/// Classification of one complete intersection.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CiClassification {
    pub weights: Vec<u64>,
    pub degrees: Vec<u64>,
    pub quasismooth_assumed: bool,
    #[serde(rename = "k_X")]
    pub k_x: i64,
    pub k_f: BTreeMap<String, String>,
    pub verdict_cor12: bool,
    pub cor12: Vec<SectorCheckJson>,
    /// Present only for quasismooth input.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub terminal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub terminal_sectors: Option<Vec<SectorCheckJson>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lemma61: Option<Lemma61Json>,
}

impl CiClassification {
    pub fn new(ci: &CIData) -> Result<Self> {
        use orbiqc_core::intersection::{
            cor12_hypothesis, k_invariants, lemma61_check, terminal_check,
        };
        let k = k_invariants(ci)?;
        let cor12 = cor12_hypothesis(ci);
        let terminal = ci
            .quasismooth_assumed()
            .then(|| terminal_check(ci))
            .transpose()?;
        let lemma61 = (ci.quasismooth_assumed() && k.k_x <= 0)
            .then(|| lemma61_check(ci))
            .transpose()?;
        Ok(CiClassification {
            weights: ci.weights().as_slice().to_vec(),
            degrees: ci.degrees().to_vec(),
            quasismooth_assumed: ci.quasismooth_assumed(),
            k_x: k.k_x,
            k_f: k.k_f.iter().map(|(f, v)| (text(f), text(v))).collect(),
            verdict_cor12: cor12.verdict,
            cor12: cor12.sectors.iter().map(SectorCheckJson::new).collect(),
            terminal: terminal.as_ref().map(|t| t.verdict),
            terminal_sectors: terminal
                .as_ref()
                .map(|t| t.sectors.iter().map(SectorCheckJson::new).collect()),
            lemma61: lemma61.as_ref().map(Lemma61Json::new),
        })
    }

    pub fn ci(&self) -> Result<CIData> {
        CIData::new(
            Weights::new(self.weights.clone())?,
            self.degrees.clone(),
            self.quasismooth_assumed,
        )
    }

    pub fn k_invariants(&self) -> Result<KInvariants> {
        let k_f = self
            .k_f
            .iter()
            .map(|(f, v)| Ok((parse_rational(f)?, parse_rational(v)?)))
            .collect::<Result<_>>()?;
        Ok(KInvariants { k_x: self.k_x, k_f })
    }

    pub fn cor12(&self) -> Result<ClassifierReport> {
        classifier_from_json(&self.cor12, self.verdict_cor12, self.quasismooth_assumed)
    }

    pub fn terminal(&self) -> Result<Option<ClassifierReport>> {
        match (&self.terminal_sectors, self.terminal) {
            (Some(s), Some(v)) => classifier_from_json(s, v, self.quasismooth_assumed).map(Some),
            _ => Ok(None),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ReidTaiJson {
    pub r: u64,
    pub weights: Vec<u64>,
    pub well_formed: bool,
    pub failing_k: Option<u64>,
    pub terminal: bool,
}

impl ReidTaiJson {
    pub fn new(r: &ReidTaiReport) -> Self {
        ReidTaiJson {
            r: r.r,
            weights: r.weights.clone(),
            well_formed: r.well_formed,
            failing_k: r.failing_k,
            terminal: r.terminal,
        }
    }

    pub fn to_core(&self) -> ReidTaiReport {
        ReidTaiReport {
            r: self.r,
            weights: self.weights.clone(),
            well_formed: self.well_formed,
            failing_k: self.failing_k,
            terminal: self.terminal,
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ClassifyReport {
    pub schema: String,
    #[serde(flatten, skip_serializing_if = "Option::is_none", default)]
    pub ci: Option<CiClassification>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reid_tai: Option<ReidTaiJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct BatchClassifyReport {
    pub schema: String,
    pub reports: Vec<CiClassification>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq, Default)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct FailureJson {
    pub check: String,
    pub item: String,
    pub detail: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub schema: String,
    pub corpus: String,
    pub degree_cap: String,
    pub weight_vectors: usize,
    pub ci_fixtures: usize,
    pub checks: BTreeMap<String, Tally>,
    pub failures: Vec<FailureJson>,
    pub passed: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbiqc_core::intersection::{i_series, mirror_data};
    use orbiqc_core::jfunction::{j_series, pf_check};
    use orbiqc_core::rat;

    fn inertia(w: &[u64]) -> Inertia {
        Inertia::from_slice(w).unwrap()
    }

    fn roundtrip<T: Serialize + for<'a> Deserialize<'a>>(x: &T) -> T {
        serde_json::from_str(&serde_json::to_string(x).unwrap()).unwrap()
    }

    #[test]
    fn sectors_json_shape() {
        let r = SectorsReport::new(&inertia(&[1, 1, 2]));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["schema"], "orbiqc/1");
        assert_eq!(v["F"][0]["f"], "0");
        assert_eq!(v["F"][0]["dim"], 2);
        assert_eq!(v["F"][1]["f"], "1/2");
        assert_eq!(v["F"][1]["age"], "1");
        let back: SectorsReport = roundtrip(&r);
        assert_eq!(back, r);
        let i = back.inertia().unwrap();
        assert_eq!(back.pairing_matrix().unwrap(), i.pairing_matrix());
    }

    #[test]
    fn ring_json_round_trip() {
        for w in [&[1u64, 1][..], &[1, 1, 2], &[2, 3]] {
            let i = inertia(w);
            let r = RingReport::new(&i).unwrap();
            let back: RingReport = roundtrip(&r);
            assert_eq!(back, r);
            assert_eq!(back.p_matrix().unwrap(), p_matrix(&i));
            assert_eq!(back.companion().unwrap(), companion_matrix(i.weights()));
            assert_eq!(back.presentation(&i).unwrap(), presentation(&i));
            assert_eq!(
                back.multiplication(&i).unwrap(),
                multiplication_table(&i).unwrap()
            );
            assert_eq!(back.chen_ruan(&i).unwrap(), chen_ruan_table(&i).unwrap());
        }
        let r = RingReport::new(&inertia(&[1, 1])).unwrap();
        assert_eq!(r.p_matrix, vec![vec!["0", "Q"], vec!["1", "0"]]);
        assert_eq!(r.top_relation, "P^2 = Q");
        let r = RingReport::new(&inertia(&[1, 1, 2])).unwrap();
        assert_eq!(r.p_matrix[0][3], "1/2*Q^(1/2)");
        assert_eq!(r.top_relation, "P^4 = 1/4*Q");
    }

    #[test]
    fn series_json_round_trip() {
        let i = inertia(&[1, 1, 2]);
        let j = j_series(&i, &rat(3, 2)).unwrap();
        let report = JfunReport {
            schema: schema(),
            weights: vec![1, 1, 2],
            degree_cap: "3/2".into(),
            series: series_json(&j),
            pf: Some(PfJson::new(&pf_check(&j).unwrap())),
            derived_matrix: None,
            derived_matches_closed_form: None,
        };
        let back: JfunReport = roundtrip(&report);
        assert_eq!(back.series().unwrap(), j);
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v["series"][1]["degree"], "1/2");
        assert_eq!(v["series"][1]["coefficients"][0][0][0], -2);
        assert_eq!(v["series"][1]["coefficients"][0][0][1], "4");
    }

    #[test]
    fn classification_round_trip() {
        let ci = CIData::from_slices(&[1, 1, 1, 1, 1, 2], &[7], true).unwrap();
        let c = CiClassification::new(&ci).unwrap();
        let report = ClassifyReport {
            schema: schema(),
            ci: Some(c.clone()),
            reid_tai: None,
        };
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v["k_X"], 0);
        assert_eq!(v["verdict_cor12"], true);
        assert_eq!(v["terminal"], true);
        let back: ClassifyReport = roundtrip(&report);
        assert_eq!(back, report);
        let back = back.ci.unwrap();
        assert_eq!(back.ci().unwrap(), ci);
        assert_eq!(
            back.k_invariants().unwrap(),
            orbiqc_core::intersection::k_invariants(&ci).unwrap()
        );
        assert_eq!(
            back.cor12().unwrap(),
            orbiqc_core::intersection::cor12_hypothesis(&ci)
        );
        assert_eq!(
            back.terminal().unwrap().unwrap(),
            orbiqc_core::intersection::terminal_check(&ci).unwrap()
        );
        assert_eq!(
            back.lemma61.unwrap().to_core().unwrap(),
            orbiqc_core::intersection::lemma61_check(&ci).unwrap()
        );

        let rt = orbiqc_core::intersection::reid_tai(3, &[1, 2]).unwrap();
        let only = ClassifyReport {
            schema: schema(),
            ci: None,
            reid_tai: Some(ReidTaiJson::new(&rt)),
        };
        let back: ClassifyReport = roundtrip(&only);
        assert_eq!(back.reid_tai.unwrap().to_core(), rt);
    }

    #[test]
    fn mirror_round_trip() {
        let ci = CIData::from_slices(&[1, 1, 1, 1, 1], &[5], true).unwrap();
        let i = ci.ambient();
        let m = mirror_data(&ci, &i_series(&ci, &rat(2, 1)).unwrap()).unwrap();
        let j = MirrorJson::new(&i, &m);
        assert_eq!(j.f, "1 + 120*Q + 113400*Q^(2)");
        let back: MirrorJson = roundtrip(&j);
        assert_eq!(back.to_core(&i).unwrap(), m);
    }
}
