//! Machine-readable run reports.
//!
//! Every CLI invocation emits one [`RunReport`] as JSON on stdout: the
//! command, echoed inputs, a typed result value, named consistency checks
//! (each carrying its measured value and tolerance), the seed when one was
//! used, and the wall-clock time. `schemas/run_report.schema.json` at the
//! repository root pins the shape.
//!
//! Exact rationals serialize as decimal strings `"p/q"`, always with an
//! explicit denominator (`"1/1"` for the empty sum).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::quad::McEstimate;

/// `p/q` form used for every rational in reports.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One named consistency check: passes when `measured <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub measured: f64,
    pub tolerance: f64,
}

impl Check {
    /// Builds the check from a measurement; NaN measurements fail.
    pub fn from_measurement(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        let status = if measured <= tolerance {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Check {
            name: name.into(),
            status,
            measured,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// The typed result of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ResultValue {
    /// Exact rational, as `"p/q"`.
    Rational { value: String },
    Float { value: f64 },
    Complex { re: f64, im: f64 },
    /// A Monte Carlo estimate with its reproduction metadata.
    Estimate {
        mean_re: f64,
        mean_im: f64,
        stderr: f64,
        stderr_im: f64,
        n_samples: u64,
        seed: u64,
        n_rejected: u64,
    },
    /// Aggregate outcome of a verification suite.
    Summary { passed: u64, failed: u64 },
}

impl From<&McEstimate> for ResultValue {
    fn from(est: &McEstimate) -> Self {
        ResultValue::Estimate {
            mean_re: est.mean.re,
            mean_im: est.mean.im,
            stderr: est.stderr,
            stderr_im: est.stderr_im,
            n_samples: est.n_samples,
            seed: est.seed,
            n_rejected: est.n_rejected,
        }
    }
}

/// One full CLI run. `seed` stays `null` for deterministic commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub result: ResultValue,
    pub checks: Vec<Check>,
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Short per-check lines for stderr.
    pub fn human_summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {} check(s)", self.command, self.checks.len());
        for check in &self.checks {
            let tag = if check.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "  {tag} {} (measured {:.3e}, tolerance {:.3e})",
                check.name, check.measured, check.tolerance
            );
        }
        let _ = write!(
            out,
            "{}",
            if self.passed() { "ok" } else { "FAILED" }
        );
        out
    }
}
