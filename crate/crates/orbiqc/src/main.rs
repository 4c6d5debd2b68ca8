use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbiqc::render;
use orbiqc::report::{
    schema, series_json, BatchClassifyReport, CiClassification, ClassifyReport, IfunReport,
    JfunReport, MirrorJson, PfJson, ReidTaiJson, RingReport, SectorsReport,
};
use orbiqc::{ingest, verify};
use orbiqc_core::arith::{int, parse_rational};
use orbiqc_core::intersection::{cor12_hypothesis, i_series, mirror_data, reid_tai, CIData};
use orbiqc_core::jfunction::{j_series, matrix_from_j, pf_check};
use orbiqc_core::ring::p_matrix;
use orbiqc_core::{Inertia, Rational, Weights};
use serde::Serialize;

/// Exact quantum orbifold cohomology of weighted projective spaces.
#[derive(Parser)]
#[command(name = "orbiqc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Twisted sectors, ages, the orbifold basis and the pairing.
    Sectors {
        #[arg(long, required = true, value_delimiter = ',', value_parser = parse_weight)]
        weights: Vec<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Matrix of quantum multiplication by P, ring presentation and product tables.
    Ring {
        #[arg(long, required = true, value_delimiter = ',', value_parser = parse_weight)]
        weights: Vec<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Small J-function series.
    Jfun {
        #[arg(long, required = true, value_delimiter = ',', value_parser = parse_weight)]
        weights: Vec<u64>,
        #[arg(long, default_value = "3", value_parser = parse_cap)]
        degree_max: Rational,
        /// Check the Picard-Fuchs equation degree by degree.
        #[arg(long)]
        verify_pf: bool,
        /// Rebuild the matrix of P o from the series and compare.
        #[arg(long)]
        derive_ring: bool,
        #[command(flatten)]
        out: Output,
    },
    /// I-function of a complete intersection and its mirror data.
    Ifun {
        #[arg(long, required = true, value_delimiter = ',', value_parser = parse_weight)]
        weights: Vec<u64>,
        #[arg(long, required = true, value_delimiter = ',', value_parser = parse_degree)]
        degrees: Vec<u64>,
        #[arg(long, default_value = "3", value_parser = parse_cap)]
        degree_max: Rational,
        #[command(flatten)]
        out: Output,
    },
    /// Canonical class, sector hypothesis and terminality of a complete intersection.
    Classify {
        #[arg(long, value_delimiter = ',', value_parser = parse_weight, requires = "degrees")]
        weights: Option<Vec<u64>>,
        #[arg(long, value_delimiter = ',', value_parser = parse_degree, requires = "weights")]
        degrees: Option<Vec<u64>>,
        /// Do not assume the complete intersection is quasismooth.
        #[arg(long)]
        not_quasismooth: bool,
        /// Reid-Tai test for a cyclic quotient, written "r;a1,a2,...".
        #[arg(long, value_parser = parse_quotient)]
        reid_tai: Option<(u64, Vec<i64>)>,
        /// Rows "w0,...,wn;d0,...,dm" or a JSON array of complete intersections.
        #[arg(long, conflicts_with_all = ["weights", "reid_tai"])]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Run every cross-check over a corpus of weight vectors.
    Verify {
        #[arg(long, default_value = "small")]
        corpus: Corpus,
        /// Longest weight vector in the corpus.
        #[arg(long, default_value_t = 4)]
        max_length: usize,
        /// Largest sum of weights in the corpus.
        #[arg(long, default_value_t = 10)]
        max_total: u64,
        #[arg(long, default_value = "3", value_parser = parse_cap)]
        degree_max: Rational,
        /// Skip the complete intersection fixtures.
        #[arg(long)]
        no_ci: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Corpus {
    Small,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Shorthand for --format latex.
    #[arg(long, conflicts_with = "format")]
    latex: bool,
    /// Write Qe^t in place of Q in text and LaTeX output.
    #[arg(long)]
    qet: bool,
    /// Write to a file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl Output {
    fn format(&self) -> Format {
        if self.latex {
            Format::Latex
        } else {
            self.format
        }
    }
}

fn parse_positive(s: &str, what: &str) -> Result<u64, String> {
    let x = s
        .trim()
        .parse::<i64>()
        .map_err(|_| format!("{what} must be integers, got {s:?}"))?;
    if x <= 0 {
        return Err(format!("{what} must be positive"));
    }
    Ok(x as u64)
}

fn parse_weight(s: &str) -> Result<u64, String> {
    parse_positive(s, "weights")
}

fn parse_degree(s: &str) -> Result<u64, String> {
    parse_positive(s, "degrees")
}

fn parse_cap(s: &str) -> Result<Rational, String> {
    let d = parse_rational(s).map_err(|e| e.to_string())?;
    if d < int(0) {
        return Err("degree cap must be nonnegative".into());
    }
    Ok(d)
}

fn parse_quotient(s: &str) -> Result<(u64, Vec<i64>), String> {
    let (r, a) = s.split_once(';').ok_or("expected \"r;a1,a2,...\"")?;
    let r = r
        .trim()
        .parse::<u64>()
        .map_err(|_| format!("bad order {r:?}"))?;
    let a = a
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad weight {x:?}"))
        })
        .collect::<Result<_, _>>()?;
    Ok((r, a))
}

/// Bad input discovered after argument parsing.
enum Failure {
    Usage(String),
}

impl From<orbiqc_core::Error> for Failure {
    fn from(e: orbiqc_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Rendered {
    text: String,
    /// Set when the report records a failed check.
    failed: Option<String>,
}

fn rendered(text: String) -> Rendered {
    Rendered { text, failed: None }
}

fn json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn no_latex(out: &Output) -> Result<(), Failure> {
    if out.format() == Format::Latex {
        return Err(Failure::Usage(
            "LaTeX output is available for sectors and ring only".into(),
        ));
    }
    Ok(())
}

fn pick(out: &Output, text: impl FnOnce() -> String, json_text: impl FnOnce() -> String) -> String {
    match out.format() {
        Format::Json => json_text(),
        _ if out.qet => render::qet(&text()),
        _ => text(),
    }
}

fn inertia(w: &[u64]) -> Result<Inertia, Failure> {
    Ok(Inertia::new(Weights::new(w.to_vec())?))
}

fn run(command: &Command) -> Result<Rendered, Failure> {
    match command {
        Command::Sectors { weights, out } => {
            let r = SectorsReport::new(&inertia(weights)?);
            Ok(rendered(match out.format() {
                Format::Latex => render::sectors_latex(&r),
                _ => pick(out, || render::sectors_text(&r), || json(&r)),
            }))
        }
        Command::Ring { weights, out } => {
            let r = RingReport::new(&inertia(weights)?)?;
            Ok(rendered(match out.format() {
                Format::Latex => render::ring_latex(&r, out.qet)?,
                _ => pick(out, || render::ring_text(&r), || json(&r)),
            }))
        }
        Command::Jfun {
            weights,
            degree_max,
            verify_pf,
            derive_ring,
            out,
        } => {
            no_latex(out)?;
            let i = inertia(weights)?;
            let series = j_series(&i, degree_max)?;
            let pf = verify_pf.then(|| pf_check(&series)).transpose()?;
            let derived = if *derive_ring {
                let j = if degree_max >= &int(1) {
                    series.clone()
                } else {
                    j_series(&i, &int(1))?
                };
                Some(matrix_from_j(&j)?)
            } else {
                None
            };
            let matches = derived.as_ref().map(|m| m == &p_matrix(&i));
            let r = JfunReport {
                schema: schema(),
                weights: weights.clone(),
                degree_cap: degree_max.to_string(),
                series: series_json(&series),
                pf: pf.as_ref().map(PfJson::new),
                derived_matrix: derived.as_ref().map(orbiqc::report::matrix_json),
                derived_matches_closed_form: matches,
            };
            let failed = match (&pf, matches) {
                (Some(p), _) if !p.passed() => Some(format!(
                    "Picard-Fuchs residual at degree {}",
                    p.first_failure()
                        .map(|d| d.degree.to_string())
                        .unwrap_or_default()
                )),
                (_, Some(false)) => {
                    Some("matrix derived from J differs from the closed form".into())
                }
                _ => None,
            };
            Ok(Rendered {
                text: pick(out, || render::jfun_text(&r), || json(&r)),
                failed,
            })
        }
        Command::Ifun {
            weights,
            degrees,
            degree_max,
            out,
        } => {
            no_latex(out)?;
            let ci = CIData::from_slices(weights, degrees, true)?;
            let series = i_series(&ci, degree_max)?;
            // mirror data only exists under these conditions; anything else going wrong is a real failure
            let applicable = ci.k_x() <= 0
                && cor12_hypothesis(&ci).verdict
                && ci.codimension() <= ci.weights().n();
            let (mirror, mirror_error, failed) = match mirror_data(&ci, &series) {
                Ok(m) => (Some(MirrorJson::new(&ci.ambient(), &m)), None, None),
                Err(e) if applicable => (None, Some(e.to_string()), Some(e.to_string())),
                Err(e) => (None, Some(e.to_string()), None),
            };
            let r = IfunReport {
                schema: schema(),
                weights: weights.clone(),
                degrees: degrees.clone(),
                k_x: ci.k_x(),
                degree_cap: degree_max.to_string(),
                series: series_json(&series),
                mirror,
                mirror_error,
            };
            Ok(Rendered {
                text: pick(out, || render::ifun_text(&r), || json(&r)),
                failed,
            })
        }
        Command::Classify {
            weights,
            degrees,
            not_quasismooth,
            reid_tai: quotient,
            input,
            out,
        } => {
            no_latex(out)?;
            if let Some(path) = input {
                let cis = ingest::load(path, !not_quasismooth)?;
                let r = BatchClassifyReport {
                    schema: schema(),
                    reports: cis
                        .iter()
                        .map(CiClassification::new)
                        .collect::<Result<_, _>>()?,
                };
                return Ok(rendered(pick(out, || render::batch_text(&r), || json(&r))));
            }
            let ci = match (weights, degrees) {
                (Some(w), Some(d)) => Some(CiClassification::new(&CIData::from_slices(
                    w,
                    d,
                    !not_quasismooth,
                )?)?),
                _ => None,
            };
            let rt = quotient
                .as_ref()
                .map(|(r, a)| reid_tai(*r, a).map(|x| ReidTaiJson::new(&x)))
                .transpose()?;
            if ci.is_none() && rt.is_none() {
                return Err(Failure::Usage(
                    "give --weights and --degrees, --reid-tai, or --input".into(),
                ));
            }
            let r = ClassifyReport {
                schema: schema(),
                ci,
                reid_tai: rt,
            };
            Ok(rendered(pick(
                out,
                || render::classify_text(&r),
                || json(&r),
            )))
        }
        Command::Verify {
            corpus,
            max_length,
            max_total,
            degree_max,
            no_ci,
            out,
        } => {
            no_latex(out)?;
            let (name, items) = match corpus {
                Corpus::Small if (*max_length, *max_total) == (4, 10) => {
                    ("small".to_string(), verify::small_corpus())
                }
                _ => (
                    format!("length 2..={max_length}, total <= {max_total}"),
                    verify::weight_corpus(2, *max_length, *max_total),
                ),
            };
            let r = verify::run(&name, &items, degree_max, !no_ci);
            let failed = r
                .failures
                .first()
                .map(|f| format!("{} failed on {}: {}", f.check, f.item, f.detail));
            Ok(Rendered {
                text: pick(out, || render::verify_text(&r), || json(&r)),
                failed,
            })
        }
    }
}

fn output_of(command: &Command) -> &Output {
    match command {
        Command::Sectors { out, .. }
        | Command::Ring { out, .. }
        | Command::Jfun { out, .. }
        | Command::Ifun { out, .. }
        | Command::Classify { out, .. }
        | Command::Verify { out, .. } => out,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command);
    let r = match result {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match &output_of(&cli.command).output {
        Some(path) => {
            if let Err(e) = fs::write(path, &r.text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", r.text),
    }
    match r.failed {
        Some(msg) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}
