//! Batch input for `classify --input`.
//!
//! Two formats are accepted. A `.json` file holds an array of
//! `{"weights": [...], "degrees": [...], "quasismooth": bool}` objects, with
//! `quasismooth` defaulting to true. Anything else is read as text, one
//! `w0,...,wn;d0,...,dm` row per line; blank lines and `#` comments are skipped.

use std::fs;
use std::path::Path;

use orbiqc_core::intersection::CIData;
use orbiqc_core::{Error, Result};
use serde::Deserialize;

#[derive(Deserialize)]
struct Entry {
    weights: Vec<u64>,
    degrees: Vec<u64>,
    #[serde(default = "yes")]
    quasismooth: bool,
}

fn yes() -> bool {
    true
}

pub fn parse_rows(text: &str, quasismooth: bool) -> Result<Vec<CIData>> {
    text.lines()
        .enumerate()
        .map(|(n, line)| (n + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
        .map(|(n, line)| {
            CIData::parse_row(line, quasismooth).map_err(|e| Error::Parse(format!("line {n}: {e}")))
        })
        .collect()
}

pub fn parse_json(text: &str) -> Result<Vec<CIData>> {
    let entries: Vec<Entry> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    entries
        .iter()
        .map(|e| CIData::from_slices(&e.weights, &e.degrees, e.quasismooth))
        .collect()
}

pub fn load(path: &Path, quasismooth: bool) -> Result<Vec<CIData>> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if path
        .extension()
        .is_some_and(|x| x.eq_ignore_ascii_case("json"))
    {
        parse_json(&text)
    } else {
        parse_rows(&text, quasismooth)
    }
}
