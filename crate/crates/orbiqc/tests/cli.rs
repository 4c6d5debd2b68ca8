use std::process::{Command, Output};

use orbiqc::report::{
    BatchClassifyReport, ClassifyReport, IfunReport, JfunReport, RingReport, SectorsReport,
    VerifyReport,
};
use orbiqc_core::jfunction::j_series;
use orbiqc_core::ring::{multiplication_table, p_matrix};
use orbiqc_core::{rat, Inertia};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

fn orbiqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbiqc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = orbiqc(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Parses the report and checks it serializes back to the same bytes.
fn report<T: Serialize + DeserializeOwned>(args: &[&str]) -> T {
    let text = stdout(args);
    let parsed: T = serde_json::from_str(&text).unwrap();
    let mut again = serde_json::to_string_pretty(&parsed).unwrap();
    again.push('\n');
    assert_eq!(again, text, "{args:?}");
    parsed
}

#[test]
fn sectors_json() {
    let r: SectorsReport = report(&["sectors", "--weights", "1,1,2", "--format", "json"]);
    let v: Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["schema"], "orbiqc/1");
    assert_eq!(v["F"][0]["f"], "0");
    assert_eq!(v["F"][0]["dim"], 2);
    assert_eq!(v["F"][0]["age"], "0");
    assert_eq!(v["F"][1]["f"], "1/2");
    assert_eq!(v["F"][1]["dim"], 0);
    assert_eq!(v["F"][1]["age"], "1");
    assert_eq!(
        r.inertia().unwrap(),
        Inertia::from_slice(&[1, 1, 2]).unwrap()
    );

    let r: SectorsReport = report(&["sectors", "--weights", "1,1", "--format", "json"]);
    assert_eq!(r.sectors.len(), 1);
    assert_eq!(r.sectors[0].dim, 1);
}

#[test]
fn nonpositive_weights_are_usage_errors() {
    for w in ["0,1", "1,-2", "1,x"] {
        let out = orbiqc(&["sectors", "--weights", w]);
        assert_eq!(out.status.code(), Some(2), "{w}");
    }
    let err = String::from_utf8(orbiqc(&["sectors", "--weights", "0,1"]).stderr).unwrap();
    assert!(err.contains("weights must be positive"), "{err}");
}

#[test]
fn ring_reports_round_trip() {
    let r: RingReport = report(&["ring", "--weights", "1,1", "--format", "json"]);
    assert_eq!(r.p_matrix, vec![vec!["0", "Q"], vec!["1", "0"]]);
    assert_eq!(r.top_relation, "P^2 = Q");

    let r: RingReport = report(&["ring", "--weights", "1,1,2", "--format", "json"]);
    assert_eq!(r.p_matrix[0][3], "1/2*Q^(1/2)");
    assert_eq!(r.top_relation, "P^4 = 1/4*Q");
    let i = r.inertia().unwrap();
    assert_eq!(r.p_matrix().unwrap(), p_matrix(&i));
    assert_eq!(
        r.multiplication(&i).unwrap(),
        multiplication_table(&i).unwrap()
    );
}

#[test]
fn ring_latex() {
    let tex = stdout(&["ring", "--weights", "1,1", "--format", "latex"]);
    assert!(
        tex.contains("\\begin{pmatrix}\n  0 & Q \\\\\n  1 & 0\n\\end{pmatrix}"),
        "{tex}"
    );
    assert_eq!(tex, stdout(&["ring", "--weights", "1,1", "--latex"]));
    let tex = stdout(&["ring", "--weights", "1,1,2", "--latex", "--qet"]);
    assert!(tex.contains("\\frac{1}{2} Q^{1/2} e^{t/2}"), "{tex}");
}

#[test]
fn latex_only_for_sectors_and_ring() {
    let out = orbiqc(&["jfun", "--weights", "1,1", "--format", "latex"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(orbiqc(&["sectors", "--weights", "1,2", "--latex"])
        .status
        .success());
}

#[test]
fn jfun_with_checks() {
    let text = stdout(&[
        "jfun",
        "--weights",
        "1,1,2",
        "--degree-max",
        "1",
        "--verify-pf",
    ]);
    assert!(text.contains("pf: PASS"), "{text}");
    let r: JfunReport = report(&[
        "jfun",
        "--weights",
        "1,1,2",
        "--degree-max",
        "1",
        "--verify-pf",
        "--derive-ring",
        "--format",
        "json",
    ]);
    let degrees: Vec<&str> = r.series.iter().map(|t| t.degree.as_str()).collect();
    assert_eq!(degrees, ["0", "1/2", "1"]);
    assert_eq!(r.derived_matches_closed_form, Some(true));
    let i = Inertia::from_slice(&[1, 1, 2]).unwrap();
    assert_eq!(r.series().unwrap(), j_series(&i, &rat(1, 1)).unwrap());
}

#[test]
fn qet_annotates_text() {
    let text = stdout(&["ring", "--weights", "1,1,2", "--qet"]);
    assert!(text.contains("P^4 = 1/4*Qe^t"), "{text}");
    assert!(text.contains("1/2*(Qe^t)^(1/2)"), "{text}");
}

#[test]
fn ifun_mirror_data() {
    let r: IfunReport = report(&[
        "ifun",
        "--weights",
        "1,1,1,1,1",
        "--degrees",
        "5",
        "--format",
        "json",
    ]);
    let m = r.mirror.unwrap();
    assert_eq!(m.f, "1 + 120*Q + 113400*Q^(2) + 168168000*Q^(3)");
    let r: IfunReport = report(&[
        "ifun",
        "--weights",
        "1,1,1,1,1",
        "--degrees",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(r.mirror.unwrap().s, "24*Q");
    // k_X > 0: no mirror data, but not a failure
    let out = orbiqc(&["ifun", "--weights", "1,1,1,1,1", "--degrees", "6"]);
    assert!(out.status.success());
}

#[test]
fn classify_x7() {
    let r: ClassifyReport = report(&[
        "classify",
        "--weights",
        "1,1,1,1,1,2",
        "--degrees",
        "7",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["k_X"], 0);
    assert_eq!(v["verdict_cor12"], true);
    assert_eq!(v["terminal"], true);
    assert_eq!(v["k_f"]["1/2"], "-2");
}

#[test]
fn classify_quotients_and_batches() {
    let r: ClassifyReport = report(&["classify", "--reid-tai", "2;1,1,1", "--format", "json"]);
    assert!(r.ci.is_none());
    assert!(r.reid_tai.unwrap().terminal);

    let dir = std::env::temp_dir().join(format!("orbiqc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let rows = dir.join("cis.txt");
    std::fs::write(&rows, "# two threefolds\n1,1,1,1,1;5\n1,1,1,2;3\n").unwrap();
    let r: BatchClassifyReport = report(&[
        "classify",
        "--input",
        rows.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(r.reports.len(), 2);
    assert_eq!(r.reports[1].terminal, Some(false));
    let json = dir.join("cis.json");
    std::fs::write(&json, r#"[{"weights":[1,1,1,1,2],"degrees":[6]}]"#).unwrap();
    let r: BatchClassifyReport = report(&[
        "classify",
        "--input",
        json.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(r.reports[0].terminal, Some(true));
    std::fs::remove_dir_all(&dir).unwrap();

    assert_eq!(orbiqc(&["classify"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["ring", "--weights", "1,2,3", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = [
        "verify",
        "--max-length",
        "3",
        "--max-total",
        "6",
        "--format",
        "json",
    ];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn verify_small_corpus() {
    let text = stdout(&["verify", "--corpus", "small"]);
    assert!(text.ends_with("all invariants PASS\n"), "{text}");
    let r: VerifyReport = report(&[
        "verify",
        "--max-length",
        "3",
        "--max-total",
        "5",
        "--no-ci",
        "--format",
        "json",
    ]);
    assert!(r.passed);
    assert_eq!(r.ci_fixtures, 0);
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("orbiqc-out-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    assert!(stdout(&[
        "sectors",
        "--weights",
        "2,3",
        "--format",
        "json",
        "--output",
        p
    ])
    .is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(
        written,
        stdout(&["sectors", "--weights", "2,3", "--format", "json"])
    );
}
