//! Randomized verification of every inequality: hypothesis-satisfying
//! generators, margin checkers and deterministic trial suites.

pub mod catalog;
pub mod checks;
pub mod generators;
pub mod oracle;
pub mod report;
pub mod scan;
pub mod suites;

use serde::{Deserialize, Serialize};

use crate::operator::{lambda_min, HermitianMatrix};
use crate::Result;

pub use checks::*;
pub use generators::*;
pub use oracle::{
    constants_table, oracle_sweep, ConstantParams, ConstantRecord, OracleGrid, OracleRecord,
    ORACLE_AGREEMENT,
};
pub use report::{write_csv, write_json, CsvSink, CSV_HEADER};
pub use scan::{
    fannes_comparison, linspace, scan_c_of_hr, scan_kantorovich, scan_ls_r, scan_specht, FannesRow,
    ScanPoint, Tighter,
};
pub use suites::{
    run_all, run_suite, run_suite_streaming, run_suite_with, timed, trial_seed, Execution,
    SuiteParams, SuiteRun, ALL_SUITES, EXTRA_SUITES,
};

/// Default tolerance for operator margins.
pub const OPERATOR_TOL: f64 = 1e-8;
/// Default tolerance for scalar margins.
pub const SCALAR_TOL: f64 = 1e-9;

/// Parameters a verdict or trial was produced under.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrialContext {
    pub seed: u64,
    pub tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(default, rename = "M", skip_serializing_if = "Option::is_none")]
    pub big_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regime: Option<String>,
}

impl TrialContext {
    pub fn new(seed: u64, tol: f64) -> Self {
        Self { seed, tol, ..Self::default() }
    }
}

/// One checked inequality `L ≤ R`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityVerdict {
    pub inequality_id: String,
    pub lhs_summary: f64,
    pub rhs_summary: f64,
    /// `R - L` for scalars, `λ_min(R - L)` for operators.
    pub margin: f64,
    pub pass: bool,
    pub context: TrialContext,
}

impl InequalityVerdict {
    pub fn scalar(id: impl Into<String>, lhs: f64, rhs: f64, context: &TrialContext) -> Self {
        Self::from_margin(id, lhs, rhs, rhs - lhs, context)
    }

    pub fn from_margin(
        id: impl Into<String>,
        lhs: f64,
        rhs: f64,
        margin: f64,
        context: &TrialContext,
    ) -> Self {
        Self {
            inequality_id: id.into(),
            lhs_summary: lhs,
            rhs_summary: rhs,
            margin,
            pass: margin >= -context.tol,
            context: context.clone(),
        }
    }

    /// `L ≤ R` in the Loewner order; summaries are normalized traces.
    pub fn operator(
        id: impl Into<String>,
        lhs: &HermitianMatrix,
        rhs: &HermitianMatrix,
        context: &TrialContext,
    ) -> Result<Self> {
        let d = lhs.dim() as f64;
        let margin = lambda_min(&rhs.sub(lhs)?)?;
        Ok(Self::from_margin(id, lhs.trace() / d, rhs.trace() / d, margin, context))
    }
}

/// Aggregate over the trials of one suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub suite_id: String,
    pub trials: usize,
    pub failures: usize,
    /// Trials that raised an error instead of producing a margin (counted
    /// among the failures).
    pub errors: usize,
    pub min_margin: Option<f64>,
    pub worst_inequality: Option<String>,
    pub worst_context: Option<TrialContext>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_error: Option<String>,
    pub elapsed_ms: u64,
}

impl TrialReport {
    pub fn empty(suite_id: &str) -> Self {
        Self {
            suite_id: suite_id.to_string(),
            trials: 0,
            failures: 0,
            errors: 0,
            min_margin: None,
            worst_inequality: None,
            worst_context: None,
            first_error: None,
            elapsed_ms: 0,
        }
    }

    /// Folds one trial in; records must arrive in trial order for the
    /// result to be deterministic on ties.
    pub fn absorb(&mut self, rec: &TrialRecord) {
        self.trials += 1;
        if !rec.pass {
            self.failures += 1;
        }
        if let Some(e) = &rec.error {
            self.errors += 1;
            if self.first_error.is_none() {
                self.first_error = Some(format!("trial {}: {e}", rec.trial));
            }
        }
        if let Some(m) = rec.margin {
            if self.min_margin.is_none_or(|cur| m < cur) {
                self.min_margin = Some(m);
                self.worst_inequality = rec.inequality_id.clone();
                self.worst_context = Some(rec.context.clone());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Outcome of one trial: the smallest margin over its verdicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub suite_id: String,
    pub trial: usize,
    pub margin: Option<f64>,
    pub pass: bool,
    pub inequality_id: Option<String>,
    pub context: TrialContext,
    pub error: Option<String>,
}

impl TrialRecord {
    pub fn from_verdicts(suite_id: &str, trial: usize, ctx: TrialContext, verdicts: &[InequalityVerdict]) -> Self {
        let worst = verdicts.iter().min_by(|a, b| a.margin.total_cmp(&b.margin));
        match worst {
            Some(v) => Self {
                suite_id: suite_id.to_string(),
                trial,
                margin: Some(v.margin),
                pass: verdicts.iter().all(|v| v.pass),
                inequality_id: Some(v.inequality_id.clone()),
                context: v.context.clone(),
                error: None,
            },
            None => Self {
                suite_id: suite_id.to_string(),
                trial,
                margin: None,
                pass: true,
                inequality_id: None,
                context: ctx,
                error: None,
            },
        }
    }

    pub fn from_error(suite_id: &str, trial: usize, ctx: TrialContext, err: &crate::Error) -> Self {
        Self {
            suite_id: suite_id.to_string(),
            trial,
            margin: None,
            pass: false,
            inequality_id: None,
            context: ctx,
            error: Some(err.to_string()),
        }
    }
}
