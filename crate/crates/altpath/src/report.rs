//! JSON and CSV output.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use altpath_core::rotation::Certificate;
use altpath_core::{AlternatingPath, FinderOutcome, FinderRun};
use serde::{Deserialize, Serialize};

use crate::sweep::SweepReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    pub first_forward: bool,
    pub verts: Vec<usize>,
}

impl From<&AlternatingPath> for PathJson {
    fn from(p: &AlternatingPath) -> Self {
        PathJson {
            first_forward: p.first_forward().unwrap_or(false),
            verts: p.verts().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub vertex: usize,
    pub side: String,
    pub degree: usize,
    pub bound: String,
    pub stage: String,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        CertificateJson {
            vertex: c.vertex,
            side: c.side.as_str().to_string(),
            degree: c.degree,
            bound: c.bound().to_string(),
            stage: c.stage.as_str().to_string(),
        }
    }
}

/// A finder run as emitted by `altpath find`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeJson {
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub path: Option<PathJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<CertificateJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    pub rounds: usize,
    pub condition_holds: bool,
}

impl From<&FinderRun> for OutcomeJson {
    fn from(run: &FinderRun) -> Self {
        let mut out = OutcomeJson {
            outcome: run.outcome.kind().to_string(),
            path: None,
            certificate: None,
            reason: None,
            rounds: run.rounds,
            condition_holds: run.condition_holds,
        };
        match &run.outcome {
            FinderOutcome::Found(p) => out.path = Some(p.into()),
            FinderOutcome::Diagnostic(c) => out.certificate = Some(c.into()),
            FinderOutcome::GaveUp { reason, .. } => out.reason = Some(reason.as_str().to_string()),
        }
        out
    }
}

/// One row of a sweep report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub graph_id: String,
    pub n: usize,
    pub edges: usize,
    pub min_pseudo_semidegree: Option<usize>,
    pub min_semidegree: Option<usize>,
    #[serde(rename = "oracle_L")]
    pub oracle_l: Option<usize>,
    /// The `k` the finder or the check was run at (the largest one for theorem sweeps).
    pub k: Option<usize>,
    /// `found`, `diagnostic`, `gave_up`, or `none` when the finder did not run.
    pub finder_outcome: String,
    pub rounds: usize,
    pub micros: u64,
    pub violation: bool,
    pub digraph6: String,
}

pub const CSV_HEADER: &str =
    "graph_id,n,edges,min_pseudo_semidegree,min_semidegree,oracle_L,finder_outcome,rounds,micros";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

fn opt(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn csv_row(r: &InstanceRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        r.graph_id,
        r.n,
        r.edges,
        opt(r.min_pseudo_semidegree),
        opt(r.min_semidegree),
        opt(r.oracle_l),
        r.finder_outcome,
        r.rounds,
        r.micros
    )
}

/// Writes the whole report as pretty JSON, or the records as CSV.
pub fn emit_report(report: &SweepReport, format: OutFormat, out: &mut dyn Write) -> io::Result<()> {
    match format {
        OutFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)
        }
        OutFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in &report.records {
                writeln!(out, "{}", csv_row(r))?;
            }
            Ok(())
        }
    }
}

/// [`emit_report`] into a file.
pub fn write_report(report: &SweepReport, format: OutFormat, path: &Path) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    emit_report(report, format, &mut w)?;
    w.flush()
}

/// The CSV columns of an [`InstanceRecord`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvRow {
    pub graph_id: String,
    pub n: usize,
    pub edges: usize,
    pub min_pseudo_semidegree: Option<usize>,
    pub min_semidegree: Option<usize>,
    pub oracle_l: Option<usize>,
    pub finder_outcome: String,
    pub rounds: usize,
    pub micros: u64,
}

impl From<&InstanceRecord> for CsvRow {
    fn from(r: &InstanceRecord) -> Self {
        CsvRow {
            graph_id: r.graph_id.clone(),
            n: r.n,
            edges: r.edges,
            min_pseudo_semidegree: r.min_pseudo_semidegree,
            min_semidegree: r.min_semidegree,
            oracle_l: r.oracle_l,
            finder_outcome: r.finder_outcome.clone(),
            rounds: r.rounds,
            micros: r.micros,
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("csv line {line}: {msg}")]
pub struct CsvError {
    pub line: usize,
    pub msg: String,
}

/// Reads CSV written by [`emit_report`].
pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>, CsvError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        _ => {
            return Err(CsvError {
                line: 1,
                msg: "missing header".into(),
            })
        }
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        let err = |msg: String| CsvError { line: i + 1, msg };
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 9 {
            return Err(err(format!("expected 9 fields, found {}", f.len())));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|e| err(format!("{s:?}: {e}")));
        let opt = |s: &str| if s.is_empty() { Ok(None) } else { num(s).map(Some) };
        rows.push(CsvRow {
            graph_id: f[0].to_string(),
            n: num(f[1])?,
            edges: num(f[2])?,
            min_pseudo_semidegree: opt(f[3])?,
            min_semidegree: opt(f[4])?,
            oracle_l: opt(f[5])?,
            finder_outcome: f[6].to_string(),
            rounds: num(f[7])?,
            micros: f[8].parse().map_err(|e| err(format!("{:?}: {e}", f[8])))?,
        });
    }
    Ok(rows)
}

pub fn report_to_string(report: &SweepReport, format: OutFormat) -> String {
    let mut buf = Vec::new();
    emit_report(report, format, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("reports are UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use altpath_core::{find_alternating_path, FinderBudget, OrientedGraph};

    #[test]
    fn outcome_json_shapes() {
        let g = OrientedGraph::from_edge_list(&[(0, 1), (2, 1), (2, 3)], 4).unwrap();
        let run = find_alternating_path(&g, 4, &FinderBudget::default());
        let j = serde_json::to_string(&OutcomeJson::from(&run)).unwrap();
        assert_eq!(
            j,
            r#"{"outcome":"found","path":{"first_forward":true,"verts":[0,1,2,3]},"rounds":0,"condition_holds":false}"#
        );

        let g = altpath_core::generate::blowup_directed_cycle(3, 2).unwrap();
        let run = find_alternating_path(&g, 5, &FinderBudget::default());
        let j = OutcomeJson::from(&run);
        assert_ne!(j.outcome, "found");
        assert!(j.path.is_none());
        let back: OutcomeJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back, j);
    }

    fn record(id: &str, l: Option<usize>) -> InstanceRecord {
        InstanceRecord {
            graph_id: id.into(),
            n: 3,
            edges: 2,
            min_pseudo_semidegree: Some(1),
            min_semidegree: None,
            oracle_l: l,
            k: Some(1),
            finder_outcome: "found".into(),
            rounds: 0,
            micros: 0,
            violation: false,
            digraph6: String::new(),
        }
    }

    fn report(records: Vec<InstanceRecord>) -> SweepReport {
        SweepReport {
            config: crate::sweep::SweepConfig::new(crate::sweep::SweepMode::Random),
            aggregate: Default::default(),
            records,
        }
    }

    #[test]
    fn empty_report_is_a_document() {
        let r = report(Vec::new());
        let v: serde_json::Value = serde_json::from_str(&report_to_string(&r, OutFormat::Json)).unwrap();
        assert_eq!(v["records"].as_array().unwrap().len(), 0);
        assert_eq!(v["config"]["mode"], "random");
        assert_eq!(report_to_string(&r, OutFormat::Csv), format!("{CSV_HEADER}\n"));
        assert!(parse_csv(&report_to_string(&r, OutFormat::Csv)).unwrap().is_empty());
    }

    #[test]
    fn csv_round_trip() {
        let mut recs = vec![record("a", Some(3)), record("b", None), record("c", Some(2))];
        recs[1].micros = 1234;
        recs[2].finder_outcome = "gave_up".into();
        let r = report(recs.clone());
        let rows = parse_csv(&report_to_string(&r, OutFormat::Csv)).unwrap();
        assert_eq!(rows, recs.iter().map(CsvRow::from).collect::<Vec<_>>());
        assert!(parse_csv("nope\n").is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\na,1\n")).is_err());
    }

    #[test]
    fn csv_row_format() {
        let r = InstanceRecord {
            graph_id: "n3-7".into(),
            n: 3,
            edges: 2,
            min_pseudo_semidegree: Some(1),
            min_semidegree: None,
            oracle_l: Some(3),
            k: Some(1),
            finder_outcome: "found".into(),
            rounds: 0,
            micros: 0,
            violation: false,
            digraph6: String::new(),
        };
        assert_eq!(csv_row(&r), "n3-7,3,2,1,,3,found,0,0");
    }
}
