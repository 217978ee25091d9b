//! CSV and JSON artifacts.
//!
//! Exact values are written as `"p/q"` strings; decimal columns are rendered
//! from the exact value at a configurable number of significant digits.
//! Word columns use the comma-separated token format and are therefore quoted
//! in CSV.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::baker::{OrbitSolution, ScatterRow};
use crate::error::{Error, Result};
use crate::measures::ConvergenceReport;
use crate::rational::{format_rational, to_decimal};
use crate::word::{Alphabet, Word};

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(format!("i/o: {e}"))
}

/// One word per record under the header `word`.
pub fn write_words_csv<W: Write>(out: W, words: impl IntoIterator<Item = Word>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["word"]).map_err(io_err)?;
    for word in words {
        w.write_record([word.to_string()]).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn read_words_csv<R: Read>(input: R, alphabet: &Alphabet) -> Result<Vec<Word>> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers().map_err(io_err)?.clone();
    if headers.iter().collect::<Vec<_>>() != ["word"] {
        return Err(Error::InvalidArgument(format!("expected header \"word\", got {headers:?}")));
    }
    r.records()
        .map(|rec| {
            let rec = rec.map_err(io_err)?;
            alphabet.parse_word(&rec[0])
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub n: usize,
    pub cylinder: String,
    pub empirical: String,
    pub exact: String,
    pub abs_error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceSummary {
    pub n: usize,
    pub points: u64,
    pub sup_distance: String,
    pub sup_distance_exact: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceJson {
    #[serde(rename = "M")]
    pub pairs: usize,
    pub ensemble: String,
    pub target: String,
    pub cylinder_len: usize,
    pub summary: Vec<ConvergenceSummary>,
    pub residuals: Vec<ConvergenceRecord>,
}

pub fn convergence_records(report: &ConvergenceReport, precision: usize) -> Vec<ConvergenceRecord> {
    report
        .rows
        .iter()
        .flat_map(|row| {
            row.residuals.iter().map(move |r| ConvergenceRecord {
                n: row.n,
                cylinder: r.cylinder.to_string(),
                empirical: to_decimal(&r.empirical, precision),
                exact: to_decimal(&r.exact, precision),
                abs_error: to_decimal(&r.abs_error, precision),
            })
        })
        .collect()
}

pub fn convergence_json(report: &ConvergenceReport, precision: usize) -> ConvergenceJson {
    ConvergenceJson {
        pairs: report.pairs,
        ensemble: report.ensemble.to_string(),
        target: report.target.to_string(),
        cylinder_len: report.cylinder_len,
        summary: report
            .rows
            .iter()
            .map(|r| ConvergenceSummary {
                n: r.n,
                points: r.points,
                sup_distance: to_decimal(&r.sup_distance, precision),
                sup_distance_exact: format_rational(&r.sup_distance),
            })
            .collect(),
        residuals: convergence_records(report, precision),
    }
}

/// Columns `n,cylinder,empirical,exact,abs_error`.
pub fn write_convergence_csv<W: Write>(out: W, report: &ConvergenceReport, precision: usize) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for rec in convergence_records(report, precision) {
        w.serialize(rec).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn read_convergence_csv<R: Read>(input: R) -> Result<Vec<ConvergenceRecord>> {
    csv::Reader::from_reader(input).deserialize().map(|r| r.map_err(io_err)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScatterRecord {
    pub period: usize,
    pub class: String,
    pub xu: String,
    pub xc: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xs: Option<String>,
}

/// Header `period,class,xu,xc` plus `xs` for the three-dimensional map.
pub fn write_scatter_csv<W: Write>(out: W, rows: &[ScatterRow], precision: usize) -> Result<()> {
    let with_xs = rows.first().is_some_and(|r| r.xs.is_some());
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["period", "class", "xu", "xc"];
    if with_xs {
        header.push("xs");
    }
    w.write_record(&header).map_err(io_err)?;
    for r in rows {
        let mut rec = vec![
            r.period.to_string(),
            r.class.to_string(),
            to_decimal(&r.xu, precision),
            to_decimal(&r.xc, precision),
        ];
        if let Some(xs) = &r.xs {
            rec.push(to_decimal(xs, precision));
        }
        w.write_record(&rec).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn read_scatter_csv<R: Read>(input: R) -> Result<Vec<ScatterRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers().map_err(io_err)?.clone();
    for col in ["period", "class", "xu", "xc"] {
        if !headers.iter().any(|h| h == col) {
            return Err(Error::InvalidArgument(format!("scatter CSV lacks column {col:?}")));
        }
    }
    r.deserialize().map(|rec| rec.map_err(io_err)).collect()
}

/// Orbit dump with exact values and decimal renderings side by side.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitJson<'a> {
    #[serde(flatten)]
    pub solution: &'a OrbitSolution,
    pub point_decimal: [String; 3],
}

pub fn orbit_json(sol: &OrbitSolution, precision: usize) -> OrbitJson<'_> {
    OrbitJson {
        solution: sol,
        point_decimal: [
            to_decimal(&sol.point.xu, precision),
            to_decimal(&sol.point.xc, precision),
            to_decimal(&sol.point.xs, precision),
        ],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One entry of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub status: CheckStatus,
    pub details: serde_json::Value,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>, pass: bool, details: serde_json::Value) -> Self {
        VerificationReport {
            check: check.into(),
            status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
            details,
            seed: None,
            samples: None,
        }
    }

    pub fn with_sampling(mut self, seed: u64, samples: u64) -> Self {
        self.seed = Some(seed);
        self.samples = Some(samples);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Sidecar describing how an output file was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub seed: Option<u64>,
    pub generator: Option<String>,
}

impl Metadata {
    pub fn new(command: Vec<String>) -> Self {
        Metadata {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            seed: None,
            generator: None,
        }
    }

    /// `<output>.meta.json` next to the output file.
    pub fn write_beside(&self, output: &Path) -> Result<()> {
        let mut name = output.as_os_str().to_owned();
        name.push(".meta.json");
        let text = serde_json::to_string_pretty(self).map_err(io_err)?;
        std::fs::write(Path::new(&name), text + "\n").map_err(io_err)
    }
}
