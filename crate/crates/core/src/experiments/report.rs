use serde::Serialize;

use super::stats::Estimate;
use crate::error::Result;

/// Estimate restricted to word tuples lying in `Y`.
#[derive(Debug, Clone, Serialize)]
pub struct Conditional {
    pub trials: u64,
    #[serde(flatten)]
    pub estimate: Estimate,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub experiment: String,
    pub r: usize,
    pub k: Option<usize>,
    pub n: usize,
    pub trials: u64,
    #[serde(flatten)]
    pub estimate: Estimate,
    pub reference: Option<f64>,
    /// Exact value rendered to 10 decimal places.
    pub exact: Option<String>,
    #[serde(skip)]
    pub exact_value: Option<f64>,
    pub master_seed: u64,
    pub wall_time: f64,
    pub conditional_on_y: Option<Conditional>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    experiment: &'a str,
    r: usize,
    k: Option<usize>,
    n: usize,
    trials: u64,
    estimate: f64,
    stderr: f64,
    ci_lo: f64,
    ci_hi: f64,
    reference: Option<f64>,
    exact: Option<&'a str>,
    master_seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub rows: Vec<ReportRow>,
}

impl ExperimentReport {
    /// One header line and one line per `n`; no timing column, so equal
    /// specs give equal text.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(CsvRow {
                experiment: &row.experiment,
                r: row.r,
                k: row.k,
                n: row.n,
                trials: row.trials,
                estimate: row.estimate.estimate,
                stderr: row.estimate.stderr,
                ci_lo: row.estimate.ci_lo,
                ci_hi: row.estimate.ci_hi,
                reference: row.reference,
                exact: row.exact.as_deref(),
                master_seed: row.master_seed,
            })?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
