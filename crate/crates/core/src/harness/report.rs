use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, ExperimentKind};
use super::thresholds::{Conclusion, Hypothesis};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// One theorem trial. `pass` is always `statistic >= bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub set_size: u64,
    pub statistic: u64,
    /// Smallest set size meeting the theorem's hypothesis.
    pub threshold: u64,
    pub meets_threshold: bool,
    pub bound: u64,
    pub pass: bool,
}

impl TrialRecord {
    pub fn new(
        trial: u64,
        set_size: u64,
        statistic: u64,
        threshold: u64,
        meets_threshold: bool,
        bound: u64,
    ) -> Self {
        TrialRecord {
            trial,
            set_size,
            statistic,
            threshold,
            meets_threshold,
            bound,
            pass: statistic >= bound,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = "==")]
    Equal,
    #[serde(rename = ">=")]
    AtLeast,
}

impl Relation {
    pub fn holds(self, statistic: f64, bound: f64) -> bool {
        match self {
            Relation::AtMost => statistic <= bound,
            Relation::Equal => statistic == bound,
            Relation::AtLeast => statistic >= bound,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::Equal => "==",
            Relation::AtLeast => ">=",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// One exhaustive check of the lemma suite: `statistic <relation> bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub name: String,
    /// The mathematical statement being checked.
    pub statement: String,
    pub statistic: f64,
    pub relation: Relation,
    pub bound: f64,
    /// Extremal or first failing input, when there is one.
    pub witness: Option<String>,
    pub status: CheckStatus,
    pub detail: Option<String>,
}

impl LemmaCheck {
    pub fn new(
        name: &str,
        statement: &str,
        statistic: f64,
        relation: Relation,
        bound: f64,
    ) -> Self {
        let status = if relation.holds(statistic, bound) {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        LemmaCheck {
            name: name.into(),
            statement: statement.into(),
            statistic,
            relation,
            bound,
            witness: None,
            status,
            detail: None,
        }
    }

    pub fn skipped(name: &str, statement: &str, reason: &str) -> Self {
        LemmaCheck {
            name: name.into(),
            statement: statement.into(),
            statistic: 0.0,
            relation: Relation::Equal,
            bound: 0.0,
            witness: None,
            status: CheckStatus::Skipped,
            detail: Some(reason.into()),
        }
    }

    pub fn with_witness(mut self, witness: impl fmt::Display) -> Self {
        self.witness = Some(witness.to_string());
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub min: u64,
    pub max: u64,
    pub mean: f64,
    /// `min statistic / q`.
    pub min_ratio: f64,
}

impl Aggregate {
    pub fn of(records: &[TrialRecord], q: u64) -> Option<Aggregate> {
        let min = records.iter().map(|r| r.statistic).min()?;
        let max = records.iter().map(|r| r.statistic).max()?;
        let mean = records.iter().map(|r| r.statistic as f64).sum::<f64>() / records.len() as f64;
        Some(Aggregate {
            min,
            max,
            mean,
            min_ratio: min as f64 / q as f64,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub kind: ExperimentKind,
    pub config: ExperimentConfig,
    pub q: u64,
    pub hypothesis: Option<Hypothesis>,
    pub conclusion: Option<Conclusion>,
    pub records: Vec<TrialRecord>,
    pub lemmas: Vec<LemmaCheck>,
    pub aggregate: Option<Aggregate>,
    pub warnings: Vec<String>,
    /// Every lemma check passed or was skipped, and every trial meeting the
    /// hypothesis reached the bound. Undersized trials never fail a run.
    pub all_pass: bool,
    pub wall_time_ms: f64,
}

impl Report {
    pub fn compute_all_pass(records: &[TrialRecord], lemmas: &[LemmaCheck]) -> bool {
        records.iter().all(|r| !r.meets_threshold || r.pass)
            && lemmas.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    /// Trial rows under `trial,set_size,statistic,bound,pass`; a lemma
    /// report has no trials and lists its checks under
    /// `check,statistic,relation,bound,status` instead.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.lemmas.is_empty() {
            w.write_record(["trial", "set_size", "statistic", "bound", "pass"])
                .expect("in-memory write");
            for r in &self.records {
                w.write_record([
                    r.trial.to_string(),
                    r.set_size.to_string(),
                    r.statistic.to_string(),
                    r.bound.to_string(),
                    r.pass.to_string(),
                ])
                .expect("in-memory write");
            }
        } else {
            w.write_record(["check", "statistic", "relation", "bound", "status"])
                .expect("in-memory write");
            for c in &self.lemmas {
                let status = serde_json::to_value(c.status).expect("enum serializes");
                w.write_record([
                    c.name.clone(),
                    c.statistic.to_string(),
                    c.relation.symbol().to_string(),
                    c.bound.to_string(),
                    status.as_str().unwrap_or_default().to_string(),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("csv is utf-8")
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => self.to_csv(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::Config(format!("unknown report format '{other}'"))),
        }
    }
}

pub fn write_report(report: &Report, format: ReportFormat, path: &Path) -> Result<()> {
    std::fs::write(path, report.render(format))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::config::SetSource;
    use super::*;

    fn report(records: Vec<TrialRecord>) -> Report {
        Report {
            schema: SCHEMA_VERSION,
            kind: ExperimentKind::T2,
            config: ExperimentConfig {
                p: 3,
                l: 1,
                d: 2,
                kind: ExperimentKind::T2,
                source: SetSource::Full,
                trials: 1,
                seed: 0,
            },
            q: 3,
            hypothesis: None,
            conclusion: None,
            aggregate: Aggregate::of(&records, 3),
            all_pass: Report::compute_all_pass(&records, &[]),
            records,
            lemmas: vec![],
            warnings: vec![],
            wall_time_ms: 1.25,
        }
    }

    #[test]
    fn json_round_trip() {
        let r = report(vec![TrialRecord::new(0, 9, 21, 9, true, 14)]);
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn empty_csv_is_header_only() {
        assert_eq!(
            report(vec![]).to_csv(),
            "trial,set_size,statistic,bound,pass\n"
        );
    }

    #[test]
    fn csv_rows() {
        let r = report(vec![
            TrialRecord::new(0, 9, 21, 9, true, 14),
            TrialRecord::new(1, 5, 3, 9, false, 14),
        ]);
        assert_eq!(
            r.to_csv(),
            "trial,set_size,statistic,bound,pass\n0,9,21,14,true\n1,5,3,14,false\n"
        );
        assert!(r.all_pass, "undersized trial does not fail the run");
    }

    #[test]
    fn pass_flag_is_recomputable() {
        let rec = TrialRecord::new(3, 47, 1, 47, true, 2);
        assert!(!rec.pass);
        assert!(!Report::compute_all_pass(&[rec], &[]));
    }

    #[test]
    fn lemma_csv() {
        let mut r = report(vec![]);
        r.lemmas = vec![
            LemmaCheck::new("stab", "|Stab| <= p^(l-1)", 3.0, Relation::AtMost, 3.0),
            LemmaCheck::skipped("zero", "x", "p = 1 mod 4"),
        ];
        assert_eq!(
            r.to_csv(),
            "check,statistic,relation,bound,status\nstab,3,<=,3,pass\nzero,0,==,0,skipped\n"
        );
    }
}
