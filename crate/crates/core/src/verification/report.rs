//! JSON and CSV serialization of reports.

use std::io::Write;

use serde::Serialize;

use super::{TrialRecord, TrialReport};
use crate::error::{Error, Result};

/// Column order of the per-trial CSV.
pub const CSV_HEADER: [&str; 9] = ["suite_id", "trial", "margin", "pass", "dim", "r", "alpha", "eps", "seed"];

#[derive(Serialize)]
struct CsvRow<'a> {
    suite_id: &'a str,
    trial: usize,
    margin: Option<f64>,
    pass: bool,
    dim: Option<usize>,
    r: Option<f64>,
    alpha: Option<f64>,
    eps: Option<f64>,
    seed: u64,
}

impl<'a> From<&'a TrialRecord> for CsvRow<'a> {
    fn from(rec: &'a TrialRecord) -> Self {
        Self {
            suite_id: &rec.suite_id,
            trial: rec.trial,
            margin: rec.margin,
            pass: rec.pass,
            dim: rec.context.dim.or(rec.context.n),
            r: rec.context.r,
            alpha: rec.context.alpha,
            eps: rec.context.eps,
            seed: rec.context.seed,
        }
    }
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Consistency(format!("write failed: {e}"))
}

/// Streams one CSV row per trial.
pub struct CsvSink<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(w: W) -> Result<Self> {
        let mut inner = csv::WriterBuilder::new().has_headers(false).from_writer(w);
        inner.write_record(CSV_HEADER).map_err(io)?;
        Ok(Self { inner })
    }

    pub fn push(&mut self, rec: &TrialRecord) -> Result<()> {
        self.inner.serialize(CsvRow::from(rec)).map_err(io)
    }

    pub fn finish(mut self) -> Result<W> {
        self.inner.flush().map_err(io)?;
        self.inner.into_inner().map_err(io)
    }
}

pub fn write_csv<W: Write>(records: &[TrialRecord], w: W) -> Result<W> {
    let mut sink = CsvSink::new(w)?;
    for r in records {
        sink.push(r)?;
    }
    sink.finish()
}

/// Pretty JSON array of reports followed by a newline.
pub fn write_json<W: Write>(reports: &[TrialReport], mut w: W) -> Result<W> {
    serde_json::to_writer_pretty(&mut w, reports).map_err(io)?;
    writeln!(w).map_err(io)?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verification::suites::{run_suite_with, Execution, SuiteParams};

    #[test]
    fn csv_has_header_and_one_row_per_trial() {
        let run = run_suite_with("entropy_tsallis", 5, 1, &SuiteParams::default(), Execution::Sequential).unwrap();
        let out = String::from_utf8(write_csv(&run.records, Vec::new()).unwrap()).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert_eq!(lines.len(), 6);
    }

    #[test]
    fn json_round_trips() {
        let rep = TrialReport::empty("x");
        let out = write_json(std::slice::from_ref(&rep), Vec::new()).unwrap();
        let back: Vec<TrialReport> = serde_json::from_slice(&out).unwrap();
        assert_eq!(back, vec![rep]);
    }
}
